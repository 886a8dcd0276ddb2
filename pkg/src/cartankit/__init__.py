"""Exact linear algebra for Cartan matrices of Lie algebras and superalgebras.

Scalars live in Q, F_p or a rational-function field K(x) (:mod:`.field`);
matrices are dense and exact (:mod:`.matrix`).  On top of that sit
normalization, equivalence and reflections (:mod:`.cartan`), closed-form
inverses of serial families (:mod:`.serial`), a verified catalog of printed
matrices with inverses (:mod:`.catalog`) and sign and hyperbolicity checks
(:mod:`.analysis`).
"""
from .cartan import (CartanSpec, bandwidth, canonical_order, equivalent, infer_parities,
                     inverse_update, normalize, odd_reflect, reflect)
from .field import FunctionField, PrimeField, Rational, field_from_spec, parse_scalar, render_scalar
from .matrix import Matrix, SingularMatrix, content_split, determinant, inverse, symmetrizer

__version__ = "0.1.0"

__all__ = [
    "CartanSpec", "FunctionField", "Matrix", "PrimeField", "Rational", "SingularMatrix",
    "bandwidth", "canonical_order", "content_split", "determinant", "equivalent",
    "field_from_spec", "infer_parities", "inverse", "inverse_update", "normalize",
    "odd_reflect", "parse_scalar", "reflect", "render_scalar", "symmetrizer",
]
