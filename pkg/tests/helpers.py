"""Random scalars and matrices for property tests (seeded, reproducible)."""
import random
from fractions import Fraction

from cartankit.field import FunctionField, PrimeField, Rational
from cartankit.matrix import Matrix

FIELDS = {
    "Q": Rational(),
    "F2": PrimeField(2),
    "F3": PrimeField(3),
    "F5": PrimeField(5),
    "Q(a)": FunctionField(Rational(), "a"),
    "F3(a)": FunctionField(PrimeField(3), "a"),
}


def rand_scalar(rng: random.Random, F, small=False):
    p = F.characteristic
    if isinstance(F, FunctionField):
        deg_n, deg_d = rng.randint(0, 1 if small else 2), rng.randint(0, 1 if small else 2)
        num = sum((F.embed(rng.randint(-3, 3)) * F.gen ** k for k in range(deg_n + 1)), F.zero)
        den = sum((F.embed(rng.randint(-3, 3)) * F.gen ** k for k in range(deg_d + 1)), F.zero)
        return num / den if den else num
    if p:
        return F.embed(rng.randrange(p))
    hi = 3 if small else 50
    return Fraction(rng.randint(-hi, hi), rng.randint(1, 1 if small else hi))


def rand_matrix(rng, F, n, small=True, density=1.0):
    rows = [[rand_scalar(rng, F, small) if rng.random() < density else F.zero for _ in range(n)]
            for _ in range(n)]
    return Matrix(rows, F)
