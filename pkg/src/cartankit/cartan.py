"""Cartan matrices with parities: normalization, equivalence, isotropic reflections.

Parities are stored as integers, 0 for even and 1 for odd.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .field import FunctionField, Residue
from .matrix import Matrix, diagonal, matmul

EVEN, ODD = 0, 1


class NotIsotropic(ValueError):
    pass


class ZeroRow(ValueError):
    pass


class UnnormalizableRow(ValueError):
    pass


class UndefinedCase(ValueError):
    pass


@dataclass(frozen=True)
class CartanSpec:
    matrix: Matrix
    parities: tuple
    name: str | None = dc_field(default=None, compare=False)

    def __post_init__(self):
        par = tuple(int(p) for p in self.parities)
        if len(par) != self.matrix.n or any(p not in (0, 1) for p in par):
            raise ValueError(f"parities {self.parities!r} do not fit an {self.matrix.n}x{self.matrix.n} matrix")
        object.__setattr__(self, "parities", par)

    @property
    def field(self):
        return self.matrix.field

    @property
    def n(self):
        return self.matrix.n

    @classmethod
    def from_rows(cls, rows, parities=None, field=None, name=None):
        """Build from rows of ints/strings; parities default to the diagonal rule."""
        m = Matrix.parse(rows, field)
        if parities is None:
            parities = infer_parities(m)
        elif isinstance(parities, str):
            parities = parse_parities(parities)
        return cls(m, tuple(parities), name)

    def isotropic_indices(self, include_even=None):
        """Indices with zero diagonal that admit a reflection.

        Odd ones always; even ones (written "ev" in tables) only in positive
        characteristic, unless ``include_even`` says otherwise.
        """
        if include_even is None:
            include_even = self.field.characteristic > 0
        return [k for k in range(self.n)
                if not self.matrix[k, k] and (self.parities[k] == ODD or include_even)]

    def __str__(self):
        par = ",".join("o" if p else "e" for p in self.parities)
        return f"{self.matrix}\nparities: {par}"


def parse_parities(text: str) -> tuple:
    out = []
    for tok in text.replace(" ", "").split(","):
        t = tok.lower()
        if t in ("e", "even", "0"):
            out.append(EVEN)
        elif t in ("o", "odd", "1"):
            out.append(ODD)
        else:
            raise ValueError(f"bad parity {tok!r}")
    return tuple(out)


def infer_parities(m: Matrix) -> tuple:
    """Diagonal rule: 0 -> odd, 1 -> odd, 2 -> even."""
    f = m.field
    out = []
    for i in range(m.n):
        d = m[i, i]
        if d == f.zero or d == f.one:
            out.append(ODD)
        elif d == f.embed(2):
            out.append(EVEN)
        else:
            raise ValueError(f"cannot infer parity of row {i} (diagonal {f.render(d)})")
    return tuple(out)


# ---------------------------------------------------------------------------
# normalization and equivalence

def normalize(spec: CartanSpec):
    """Rescale rows: diagonal 2 for even rows, 1 for odd rows, and for a
    zero diagonal the first nonzero off-diagonal entry becomes -1.

    Returns ``(normalized, scales)`` with normalized.matrix = diag(scales) * spec.matrix.
    """
    f = spec.field
    m = spec.matrix
    scales = []
    for i, row in enumerate(m.rows):
        d = row[i]
        if d:
            target = f.embed(2) if spec.parities[i] == EVEN else f.one
            if not target:
                raise UnnormalizableRow(f"row {i}: even diagonal cannot become 2 in characteristic 2")
            scales.append(target / d)
        else:
            first = next((x for x in row if x), None)
            if first is None:
                raise ZeroRow(f"row {i} is zero")
            scales.append(-f.one / first)
    out = Matrix._raw([[s * x for x in r] for s, r in zip(scales, m.rows)], f)
    return CartanSpec(out, spec.parities, spec.name), scales


def equivalent(s1: CartanSpec, s2: CartanSpec):
    """Find (sigma, d) with s2[i][j] = d[i] * s1[sigma[i]][sigma[j]] and
    s2.parities[i] = s1.parities[sigma[i]]; None if there is none.
    """
    if s1.n != s2.n:
        raise ValueError("dimension mismatch")
    if s1.field != s2.field:
        raise ValueError("field mismatch")
    n = s1.n
    a, b = s1.matrix.rows, s2.matrix.rows

    def sig(rows, par, i):
        return (par[i], bool(rows[i][i]), sum(1 for x in rows[i] if x),
                sum(1 for r in rows if r[i]))

    sig1 = [sig(a, s1.parities, i) for i in range(n)]
    sig2 = [sig(b, s2.parities, i) for i in range(n)]
    if sorted(sig1) != sorted(sig2):
        return None
    cands = [[c for c in range(n) if sig1[c] == sig2[i]] for i in range(n)]
    order = sorted(range(n), key=lambda i: len(cands[i]))
    sigma = [None] * n
    ratio = [None] * n
    used = [False] * n

    def fits(i, c):
        saved = list(ratio)
        for j in range(n):
            cj = c if j == i else sigma[j]
            if cj is None:
                continue
            for (r, s, x, y) in ((i, j, b[i][j], a[c][cj]), (j, i, b[j][i], a[cj][c])):
                if bool(x) != bool(y):
                    ratio[:] = saved
                    return False
                if x:
                    q = x / y
                    if ratio[r] is None:
                        ratio[r] = q
                    elif ratio[r] != q:
                        ratio[:] = saved
                        return False
        return saved

    def search(pos):
        if pos == n:
            return True
        i = order[pos]
        for c in cands[i]:
            if used[c]:
                continue
            saved = fits(i, c)
            if saved is False:
                continue
            sigma[i], used[c] = c, True
            if search(pos + 1):
                return True
            sigma[i], used[c] = None, False
            ratio[:] = saved
        return False

    if not search(0):
        return None
    f = s1.field
    d = [r if r is not None else f.one for r in ratio]
    return tuple(sigma), d


def apply_equivalence(s1: CartanSpec, sigma, d) -> CartanSpec:
    n = s1.n
    rows = [[d[i] * s1.matrix[sigma[i], sigma[j]] for j in range(n)] for i in range(n)]
    return CartanSpec(Matrix._raw(rows, s1.field), tuple(s1.parities[sigma[i]] for i in range(n)),
                      s1.name)


# ---------------------------------------------------------------------------
# reflections

def _lift(x, field):
    """Least non-negative integer congruent to a field value, or None."""
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else None
    if isinstance(x, Residue):
        return x.value
    if isinstance(field, FunctionField):
        if x.is_constant():
            return _lift(x.constant(), field.base)
        return None
    raise TypeError(f"unsupported scalar {x!r}")


def reflection_coefficient(spec: CartanSpec, k: int, j: int) -> int:
    """Coefficient of the k-th simple root in the reflected j-th simple root."""
    if k == j:
        raise ValueError("k and j must differ")
    a, f = spec.matrix, spec.field
    p = f.characteristic
    akk, akj = a[k, k], a[k, j]
    if akk:
        if p == 2 and akk == a[j, k]:
            return 2
        val = _lift(-2 * akj / akk, f)
        if val is None:
            if p:
                return p - 1
            raise UndefinedCase(f"-2A[{k},{j}]/A[{k},{k}] is not an integer")
        if val < 0:
            raise UndefinedCase(f"-2A[{k},{j}]/A[{k},{k}] = {val} is negative")
        return val
    if not akj:
        return 0
    if spec.parities[k] == ODD:
        return 1
    if p:
        return p - 1
    raise UndefinedCase("even root with zero diagonal in characteristic 0")


@dataclass(frozen=True)
class ReflectionFactors:
    """Data of r_k(A) = (E + B) A (E + C): column k of B is ``b``, row k of C is ``c``."""

    k: int
    b: tuple
    c: tuple
    coefficients: tuple
    parity_delta: tuple

    def matrices(self, field):
        n = len(self.b)
        z = field.zero
        B = [[self.b[i] if j == self.k else z for j in range(n)] for i in range(n)]
        C = [[self.c[j] if i == self.k else z for j in range(n)] for i in range(n)]
        E = Matrix.identity(n, field)
        return E + Matrix._raw(B, field), E + Matrix._raw(C, field)


def reflect(spec: CartanSpec, k: int):
    """Reflection in an isotropic simple root (zero diagonal entry at k).

    For an odd root every neighbour coefficient is 1; for an even root with
    zero diagonal (positive characteristic) it is p - 1.  The result is not
    normalized.
    """
    n, f, a = spec.n, spec.field, spec.matrix
    if not 0 <= k < n:
        raise IndexError(f"index {k} out of range")
    if a[k, k]:
        raise NotIsotropic(f"diagonal entry {k} is nonzero")
    if spec.parities[k] == 0 and f.characteristic == 0:
        raise NotIsotropic(f"root {k} is even")
    coef = []
    for j in range(n):
        if j == k:
            coef.append(-2)
            continue
        if bool(a[j, k]) != bool(a[k, j]):
            raise NotIsotropic(f"zero pattern not symmetric at ({k}, {j})")
        coef.append(reflection_coefficient(spec, k, j))
    c = [f.embed(x) for x in coef]
    b = []
    for i in range(n):
        if i == k:
            b.append(f.embed(-2))
        elif a[i, k]:
            b.append(c[i] * a[i, k] / a[k, i])
        else:
            b.append(f.zero)
    rows = [[a[i, j] + b[i] * a[k, j] + c[j] * a[i, k] for j in range(n)] for i in range(n)]
    pk = spec.parities[k]
    delta = tuple(0 if j == k else (coef[j] * pk) % 2 for j in range(n))
    parities = tuple((p + d) % 2 for p, d in zip(spec.parities, delta))
    factors = ReflectionFactors(k, tuple(b), tuple(c), tuple(coef), delta)
    return CartanSpec(Matrix._raw(rows, f), parities, spec.name), factors


def odd_reflect(spec: CartanSpec, k: int):
    """Reflection in the k-th simple root, which must be odd with A_kk = 0."""
    if not 0 <= k < spec.n:
        raise IndexError(f"index {k} out of range")
    if spec.parities[k] != ODD or spec.matrix[k, k]:
        raise NotIsotropic(f"root {k} is not odd isotropic")
    return reflect(spec, k)


def inverse_update(prev_inverse: Matrix, factors: ReflectionFactors) -> Matrix:
    """Inverse of the (unnormalized) reflected matrix: (E + C) A^-1 (E + B).

    (E + B) and (E + C) are involutions, so no elimination is needed.  For
    the inverse of the normalized matrix with row scales d, multiply the
    result on the right by diag(d)^-1.
    """
    EB, EC = factors.matrices(prev_inverse.field)
    return matmul(matmul(EC, prev_inverse), EB)


def rescale_inverse(inv: Matrix, scales) -> Matrix:
    f = inv.field
    return matmul(inv, diagonal([f.one / s for s in scales], f))


# ---------------------------------------------------------------------------
# ordering

def bandwidth(m: Matrix, perm=None) -> int:
    n = m.n
    perm = perm if perm is not None else range(n)
    pos = {v: i for i, v in enumerate(perm)}
    return max((abs(pos[i] - pos[j]) for i in range(n) for j in range(n) if m[i, j]), default=0)


def canonical_order(spec) -> tuple:
    """Permutation gathering nonzero entries closest to the diagonal.

    Minimizes the bandwidth exhaustively (branch and bound, n <= 10); ties go
    to the lexicographically smallest permuted zero pattern (nonzero = 1),
    then to the smallest permutation.
    """
    m = spec.matrix if isinstance(spec, CartanSpec) else spec
    n = m.n
    if n > 10:
        raise ValueError("exhaustive ordering is limited to n <= 10")
    nz = [[bool(m[i, j]) or bool(m[j, i]) for j in range(n)] for i in range(n)]
    raw = [[1 if m[i, j] else 0 for j in range(n)] for i in range(n)]
    best = [bandwidth(m) + 1, None, None]

    def pattern(perm):
        return tuple(raw[perm[i]][perm[j]] for i in range(n) for j in range(n))

    def extend(perm, used, width):
        pos = len(perm)
        if pos == n:
            key = (width, pattern(perm), tuple(perm))
            if best[1] is None or key < (best[0], best[1], best[2]):
                best[:] = list(key)
            return
        for v in range(n):
            if used[v]:
                continue
            w = width
            ok = True
            for q, u in enumerate(perm):
                if nz[u][v]:
                    w = max(w, pos - q)
                    if w > best[0]:
                        ok = False
                        break
            if not ok:
                continue
            # an unplaced neighbour of an early vertex forces a wide band later
            for q, u in enumerate(perm):
                if any(nz[u][x] and not used[x] and x != v for x in range(n)):
                    if pos + 1 - q > best[0]:
                        ok = False
                        break
            if not ok:
                continue
            used[v] = True
            perm.append(v)
            extend(perm, used, w)
            perm.pop()
            used[v] = False

    extend([], [False] * n, 0)
    return best[2]


def permute(spec: CartanSpec, perm) -> CartanSpec:
    n = spec.n
    rows = [[spec.matrix[perm[i], perm[j]] for j in range(n)] for i in range(n)]
    return CartanSpec(Matrix._raw(rows, spec.field), tuple(spec.parities[p] for p in perm),
                      spec.name)

