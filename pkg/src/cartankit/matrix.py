"""Dense exact square matrices over the fields of :mod:`cartankit.field`."""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .field import (FieldMismatch, FunctionField, Rational, RationalFunction, _pdivmod, _pgcd,
                    _pmul)

MAX_DIM = 64


class SingularMatrix(ArithmeticError):
    def __init__(self, rank, n):
        super().__init__(f"matrix is singular: rank {rank} < {n}")
        self.rank = rank
        self.n = n


class NotSymmetrizable(ValueError):
    pass


class DecomposableInput(ValueError):
    pass


class Matrix:
    """Immutable n x n matrix; ``rows`` is a tuple of tuples of field elements."""

    __slots__ = ("rows", "field", "n")

    def __init__(self, rows, field=None):
        field = field if field is not None else Rational()
        rows = tuple(tuple(field.coerce(x) for x in r) for r in rows)
        n = len(rows)
        if not 1 <= n <= MAX_DIM:
            raise ValueError(f"dimension must be in 1..{MAX_DIM}, got {n}")
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        self.rows = rows
        self.field = field
        self.n = n

    @classmethod
    def _raw(cls, rows, field):
        m = object.__new__(cls)
        m.rows = tuple(tuple(r) for r in rows)
        m.field = field
        m.n = len(m.rows)
        return m

    @classmethod
    def identity(cls, n, field=None):
        field = field if field is not None else Rational()
        z, o = field.zero, field.one
        return cls._raw([[o if i == j else z for j in range(n)] for i in range(n)], field)

    @classmethod
    def parse(cls, rows, field=None):
        """Build from nested lists of scalar strings (or ints)."""
        field = field if field is not None else Rational()
        return cls._raw([[field.parse(x) if isinstance(x, str) else field.coerce(x)
                          for x in r] for r in rows], field)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __matmul__(self, other):
        return matmul(self, other)

    def __add__(self, other):
        _check_compatible(self, other)
        return Matrix._raw([[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                           self.field)

    def __sub__(self, other):
        _check_compatible(self, other)
        return Matrix._raw([[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                           self.field)

    def __neg__(self):
        return Matrix._raw([[-x for x in r] for r in self.rows], self.field)

    def scale(self, s):
        s = self.field.coerce(s)
        return Matrix._raw([[s * x for x in r] for r in self.rows], self.field)

    def transpose(self):
        return Matrix._raw(list(zip(*self.rows)), self.field)

    def is_identity(self):
        return self == Matrix.identity(self.n, self.field)

    def to_strings(self):
        return [[self.field.render(x) for x in r] for r in self.rows]

    def __repr__(self):
        return f"Matrix({self.to_strings()}, {self.field})"

    def __str__(self):
        return "\n".join(" ".join(r) for r in self.to_strings())


def _check_compatible(a, b):
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")


def diagonal(entries, field=None) -> Matrix:
    field = field if field is not None else Rational()
    entries = [field.coerce(x) for x in entries]
    n = len(entries)
    return Matrix._raw([[entries[i] if i == j else field.zero for j in range(n)]
                        for i in range(n)], field)


def matmul(lhs: Matrix, rhs: Matrix) -> Matrix:
    _check_compatible(lhs, rhs)
    cols = list(zip(*rhs.rows))
    zero = lhs.field.zero
    out = []
    for r in lhs.rows:
        row = []
        for c in cols:
            acc = zero
            for x, y in zip(r, c):
                if x and y:
                    acc = acc + x * y
            row.append(acc)
        out.append(row)
    return Matrix._raw(out, lhs.field)


def _pivot_row(a, col, start, field):
    # Over function fields the lowest total degree pivot limits expression swell.
    if isinstance(field, FunctionField):
        best = None
        for r in range(start, len(a)):
            x = a[r][col]
            if x and (best is None or x.degree < a[best][col].degree):
                best = r
        return best
    for r in range(start, len(a)):
        if a[r][col]:
            return r
    return None


def _rank(M):
    a = [list(r) for r in M.rows]
    n = M.n
    rank = 0
    for col in range(n):
        p = _pivot_row(a, col, rank, M.field)
        if p is None:
            continue
        a[rank], a[p] = a[p], a[rank]
        piv = a[rank][col]
        for r in range(rank + 1, n):
            if a[r][col]:
                f = a[r][col] / piv
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


def inverse(M: Matrix) -> Matrix:
    """Gauss-Jordan inverse; raises :class:`SingularMatrix` with the rank found."""
    n, field = M.n, M.field
    zero, one = field.zero, field.one
    a = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(M.rows)]
    for col in range(n):
        p = _pivot_row(a, col, col, field)
        if p is None:
            raise SingularMatrix(_rank(M), n)
        a[col], a[p] = a[p], a[col]
        inv = one / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    out = Matrix._raw([r[n:] for r in a], field)
    if not matmul(M, out).is_identity():
        raise AssertionError("internal check M * M^-1 = E failed")
    return out


def determinant(M: Matrix):
    """Fraction-free (Bareiss) elimination with row swaps."""
    n, field = M.n, M.field
    a = [list(r) for r in M.rows]
    sign = 1
    prev = field.one
    for k in range(n - 1):
        p = _pivot_row(a, k, k, field)
        if p is None:
            return field.zero
        if p != k:
            a[k], a[p] = a[p], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (akk * a[i][j] - aik * a[k][j]) / prev
            a[i][k] = field.zero
        prev = akk
    d = a[n - 1][n - 1]
    return d if sign == 1 else -d


def principal_submatrix(M: Matrix, keep) -> Matrix:
    """Rows and columns in ``keep`` (0-based indices), original order kept."""
    keep = sorted(set(keep))
    if not keep:
        raise ValueError("empty index set")
    if keep[0] < 0 or keep[-1] >= M.n:
        raise IndexError(f"index out of range 0..{M.n - 1}")
    return Matrix._raw([[M.rows[i][j] for j in keep] for i in keep], M.field)


def support_components(M: Matrix) -> list[list[int]]:
    """Connected components of the graph with an edge i-j when M_ij or M_ji is nonzero."""
    n = M.n
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], []
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if not seen[j] and j != i and (M.rows[i][j] or M.rows[j][i]):
                    seen[j] = True
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def is_indecomposable(M: Matrix) -> bool:
    return len(support_components(M)) == 1


def symmetrizer(M: Matrix) -> list:
    """Diagonal d with diag(d) * M symmetric and d[0] = 1.

    Values propagate along a spanning tree of the support graph, then every
    pair is checked.
    """
    if not is_indecomposable(M):
        raise DecomposableInput("matrix is decomposable")
    n, field, a = M.n, M.field, M.rows
    d = [None] * n
    d[0] = field.one
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j == i or d[j] is not None or not (a[i][j] or a[j][i]):
                continue
            if not a[j][i] or not a[i][j]:
                raise NotSymmetrizable(f"zero pattern not symmetric at ({i}, {j})")
            # d_i a_ij = d_j a_ji
            d[j] = d[i] * a[i][j] / a[j][i]
            stack.append(j)
    for i in range(n):
        for j in range(i + 1, n):
            if d[i] * a[i][j] != d[j] * a[j][i]:
                raise NotSymmetrizable(f"cycle condition fails at ({i}, {j})")
    return d


def content_split(M: Matrix):
    """``(scale, N)`` with ``M = scale * N`` and N as plain as possible.

    Over Q, N is integral with coprime entries and scale > 0.  Over a
    function field the monic common denominator is pulled out.  Otherwise
    the scale is 1.
    """
    field = M.field
    entries = [x for r in M.rows for x in r if x]
    if not entries:
        return field.one, M
    if isinstance(field, Rational):
        den = lcm(*(x.denominator for x in entries))
        scale = Fraction(gcd(*(x.numerator for x in entries)), den)
    elif isinstance(field, FunctionField):
        den = (field.base.one,)
        for x in entries:
            g = _pgcd(den, x.den)
            den = _pmul(den, _pdivmod(x.den, g)[0])
        scale = field.one / RationalFunction(den, (field.base.one,), field)
        if isinstance(field.base, Rational):
            coeffs = [c for x in entries for c in (x / scale).num if c]
            scale = scale * Fraction(gcd(*(c.numerator for c in coeffs)),
                                     lcm(*(c.denominator for c in coeffs)))
    else:
        return field.one, M
    if scale == 1:
        return field.one, M
    return scale, M.scale(1 / scale)
