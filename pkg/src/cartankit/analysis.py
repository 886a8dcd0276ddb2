"""Structural predicates and searches on Cartan matrices and their inverses."""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field as dc_field
from itertools import combinations

from .cartan import (CartanSpec, equivalent, inverse_update, normalize, reflect,
                     rescale_inverse)
from .field import FunctionField
from .matrix import (DecomposableInput, Matrix, NotSymmetrizable, determinant, diagonal,
                     inverse, is_indecomposable, matmul, principal_submatrix,
                     support_components, symmetrizer)

log = logging.getLogger(__name__)


class NotOrderedField(ValueError):
    pass


class NotAForest(ValueError):
    pass


class SuperInput(ValueError):
    pass


class LimitExceeded(RuntimeError):
    def __init__(self, limit, frontier):
        super().__init__(f"class not closed within {limit} members ({frontier} unexplored)")
        self.limit = limit
        self.frontier = frontier


# ---------------------------------------------------------------------------
# sign census of inverses

@dataclass
class InverseClassification:
    all_nonpositive: bool
    all_negative: bool
    zeros_diagonal_only: bool
    positive_positions: list
    zero_positions: list


def zhang_classify(inv: Matrix) -> InverseClassification:
    """Signs of all entries of a rational matrix (typically an inverse)."""
    if not getattr(inv.field, "ordered", False):
        raise NotOrderedField(f"signs are undefined over {inv.field}")
    n = inv.n
    pos = [(i, j) for i in range(n) for j in range(n) if inv[i, j] > 0]
    zeros = [(i, j) for i in range(n) for j in range(n) if inv[i, j] == 0]
    return InverseClassification(
        all_nonpositive=not pos,
        all_negative=not pos and not zeros,
        zeros_diagonal_only=all(i == j for i, j in zeros),
        positive_positions=pos,
        zero_positions=zeros,
    )


# ---------------------------------------------------------------------------
# Lusztig-Tits

@dataclass
class LTResult:
    ok: bool
    violations: list = dc_field(default_factory=list)

    def __bool__(self):
        return self.ok


def _is_forest(adj: Matrix) -> bool:
    n = adj.n
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if adj[i, j]]
    parent = list(range(n))

    def root(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in edges:
        ri, rj = root(i), root(j)
        if ri == rj:
            return False
        parent[ri] = rj
    return True


def _check_adjacency(adj: Matrix):
    n = adj.n
    for i in range(n):
        if adj[i, i]:
            raise NotAForest("adjacency matrix has a loop")
        for j in range(n):
            if adj[i, j] not in (0, 1) or adj[i, j] != adj[j, i]:
                raise NotAForest("adjacency matrix must be symmetric 0/1")
    if not _is_forest(adj):
        raise NotAForest("graph has a cycle")


def lt_condition_check(C: Matrix, adjacency: Matrix) -> LTResult:
    """Conditions a)-d) for C on the forest given by ``adjacency``.

    Condition d) is checked on all 2^n - 1 principal minors, so n <= 12.
    """
    if C.n != adjacency.n:
        raise ValueError("dimension mismatch")
    if not getattr(C.field, "ordered", False):
        raise NotOrderedField(f"signs are undefined over {C.field}")
    _check_adjacency(adjacency)
    n = C.n
    if n > 12:
        raise ValueError("exhaustive minor check is limited to n <= 12")
    bad = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if bool(C[i, j]) != bool(C[j, i]):
                bad.append(("a", i, j))
            if bool(adjacency[i, j]) != bool(C[i, j]):
                bad.append(("b", i, j))
            if C[i, j] > 0:
                bad.append(("c", i, j))
    for size in range(1, n + 1):
        for keep in combinations(range(n), size):
            if determinant(principal_submatrix(C, keep)) <= 0:
                bad.append(("d", keep))
    return LTResult(not bad, bad)


def lusztig_tits_verify(C: Matrix, adjacency: Matrix):
    """For C on a tree satisfying a)-d), every entry of C^-1 is positive.

    Returns ``(True, None)`` or ``(False, (i, j))`` for a non-positive entry;
    the latter means a bug or a broken precondition and is logged.
    """
    check = lt_condition_check(C, adjacency)
    if not check:
        raise ValueError(f"conditions fail: {check.violations[:5]}")
    if len(support_components(adjacency)) != 1:
        raise NotAForest("adjacency graph is not a single tree")
    inv = inverse(C)
    for i in range(C.n):
        for j in range(C.n):
            if not inv[i, j] > 0:
                log.error("non-positive inverse entry at %s for a valid input", (i, j))
                return False, (i, j)
    return True, None


# ---------------------------------------------------------------------------
# hyperbolicity

def _leading_minors_positive(S: Matrix, upto=None) -> bool:
    upto = S.n if upto is None else upto
    return all(determinant(principal_submatrix(S, range(k))) > 0 for k in range(1, upto + 1))


def _all_minors_positive(A: Matrix, proper=False) -> bool:
    sizes = range(1, A.n) if proper else range(1, A.n + 1)
    return all(determinant(principal_submatrix(A, keep)) > 0
               for size in sizes for keep in combinations(range(A.n), size))


def classify_block(S: Matrix, symmetric: bool = True) -> str:
    """'finite', 'affine' or 'indefinite' for an indecomposable block.

    A symmetric block is decided by leading minors.  Otherwise the block must
    be a generalized Cartan matrix and all principal minors are used: finite
    iff all are positive, affine iff det = 0 and all proper ones are positive.
    """
    if symmetric:
        if _leading_minors_positive(S):
            return "finite"
        if determinant(S) == 0 and _leading_minors_positive(S, S.n - 1):
            # positive definite corank-one minor + zero determinant: semidefinite, kernel of dimension 1
            return "affine"
        return "indefinite"
    if _all_minors_positive(S):
        return "finite"
    if determinant(S) == 0 and _all_minors_positive(S, proper=True):
        return "affine"
    return "indefinite"


@dataclass
class HyperbolicCertificate:
    determinant: object
    symmetrizer: list | None
    deletions: dict

    def __str__(self):
        lines = [f"det = {self.determinant}"]
        if self.symmetrizer is None:
            lines.append("not symmetrizable: blocks classified by principal minors")
        for i, blocks in self.deletions.items():
            desc = ", ".join(f"{kind}{comp}" for comp, kind in blocks)
            lines.append(f"delete {i}: {desc}")
        return "\n".join(lines)


def _is_gcm(A: Matrix) -> bool:
    n = A.n
    for i in range(n):
        if A[i, i] != 2:
            return False
        for j in range(n):
            x = A[i, j]
            if i != j and (x > 0 or x.denominator != 1 or bool(x) != bool(A[j, i])):
                return False
    return True


def hyperbolic_check(spec: CartanSpec):
    """Hyperbolicity of a Lie-algebra Cartan matrix.

    True iff det < 0 and, for every i, each indecomposable block left after
    deleting row and column i is of finite or affine type.  Symmetrizable
    matrices are symmetrized with a positive D first.  A non-symmetrizable
    generalized Cartan matrix is classified block by block through its
    principal minors; any other non-symmetrizable input is rejected.
    """
    if spec.field.characteristic != 0 or not getattr(spec.field, "ordered", False):
        raise NotOrderedField("hyperbolicity is decided over Q only")
    if any(spec.parities):
        raise SuperInput("odd parities present")
    A = spec.matrix
    if not is_indecomposable(A):
        raise DecomposableInput("matrix is decomposable")
    try:
        d = symmetrizer(A)
    except NotSymmetrizable:
        if not _is_gcm(A):
            raise
        d = None
    if d is not None and any(x <= 0 for x in d):
        raise NotSymmetrizable("symmetrizer is not positive")
    S = A if d is None else matmul(diagonal(d, A.field), A)
    det = determinant(S)
    deletions = {}
    ok = det < 0
    for i in range(A.n):
        rest = [j for j in range(A.n) if j != i]
        sub = principal_submatrix(S, rest)
        blocks = []
        for comp in support_components(sub):
            kind = classify_block(principal_submatrix(sub, comp), symmetric=d is not None)
            blocks.append((tuple(rest[c] for c in comp), kind))
            if kind == "indefinite":
                ok = False
        deletions[i] = blocks
    return ok, HyperbolicCertificate(determinant(A), d, deletions)


# ---------------------------------------------------------------------------
# enumeration by reflections

@dataclass
class ReflectionClass:
    seeds: list
    members: list
    edges: list
    determinants: list
    inverses: list = dc_field(default_factory=list)

    def __len__(self):
        return len(self.members)


def substitute(spec: CartanSpec, value) -> CartanSpec:
    """Replace the function-field variable by ``value`` in every entry."""
    F = spec.field
    if not isinstance(F, FunctionField):
        raise TypeError("substitution needs a function field")
    value = F.coerce(value) if not isinstance(value, str) else F.parse(value)
    m = Matrix._raw([[x(value) for x in r] for r in spec.matrix.rows], F)
    return CartanSpec(m, spec.parities, spec.name)


def osp42_parameter_orbit(field: FunctionField) -> list:
    """The six substitutions of the variable that give isomorphic osp(4|2) deformations."""
    v = field.var
    return [field.parse(t.replace("x", v)) for t in
            ("x", "-1-x", "1/x", "-x/(1+x)", "-1/(1+x)", "-(1+x)/x")]


def _same(a, b, substitutions):
    if equivalent(a, b) is not None:
        return True
    return any(equivalent(a, substitute(b, g)) is not None for g in substitutions)


def enumerate_class(seed: CartanSpec, limit: int = 512, include_even=None,
                    substitutions=()) -> ReflectionClass:
    """Breadth-first closure of ``seed`` under isotropic reflections.

    Every reflected matrix is normalized and compared to the known members
    up to equivalence.  Inverses are carried along by the update rule, not
    recomputed.  Over a function field, ``substitutions`` lists values of
    the variable under which two matrices also count as the same (see
    :func:`osp42_parameter_orbit`).
    """
    if limit < 1:
        raise ValueError("limit must be positive")
    start, _ = normalize(seed)
    members = [start]
    inverses = [inverse(start.matrix)]
    edges = []
    queue = deque([0])
    while queue:
        u = queue.popleft()
        spec = members[u]
        for k in spec.isotropic_indices(include_even):
            raw, factors = reflect(spec, k)
            cand, scales = normalize(raw)
            for v, other in enumerate(members):
                if _same(other, cand, substitutions):
                    edges.append((u, k, v))
                    break
            else:
                if len(members) >= limit:
                    raise LimitExceeded(limit, len(queue) + 1)
                members.append(cand)
                inverses.append(rescale_inverse(inverse_update(inverses[u], factors), scales))
                edges.append((u, k, len(members) - 1))
                queue.append(len(members) - 1)
    dets = [determinant(m.matrix) for m in members]
    return ReflectionClass([seed], members, edges, dets, inverses)


def represent(cls: ReflectionClass, references, substitutions=()) -> ReflectionClass:
    """The same class with each member replaced by an equivalent reference matrix.

    Determinants depend on how zero-diagonal rows are scaled, so comparing
    spectra with a table needs the table's own representatives.
    """
    refs = list(references)
    members = []
    for m in cls.members:
        hit = next((r for r in refs if _same(r, m, substitutions)), None)
        if hit is None:
            raise LookupError(f"no reference is equivalent to member\n{m.matrix}")
        members.append(hit)
    return ReflectionClass(cls.seeds, members, cls.edges,
                           [determinant(m.matrix) for m in members],
                           [inverse(m.matrix) for m in members])


def det_spectrum(cls):
    """Determinants of all members (a class or a list of specs) and the distinct count."""
    specs = cls.members if isinstance(cls, ReflectionClass) else list(cls)
    dets = [determinant(m.matrix) for m in specs]
    distinct = []
    for d in dets:
        if d not in distinct:
            distinct.append(d)
    return dets, len(distinct)
