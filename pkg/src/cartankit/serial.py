"""Serial families of Cartan matrices and their inverses in closed form.

Every family matrix is generated literally as a block matrix built around
A_n, the Cartan matrix of sl(n+1).  The closed forms below never run an
elimination; tests compare them with :func:`cartankit.matrix.inverse`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cartan import CartanSpec, infer_parities
from .field import Rational
from .matrix import Matrix, matmul

TAGS = ("Am", "Tn", "Sl_m0n", "Sl_m00n", "B1_0n", "B1_00n", "C1_0n", "B2_0n", "D2_0n",
        "D2_00n", "Wn")
OSP_TAGS = ("B1_0n", "B1_00n", "C1_0n", "B2_0n", "D2_0n", "D2_00n")


class UnsupportedFamilyForClosedForm(ValueError):
    pass


class FamilyParameterError(ValueError):
    pass


# upper-left blocks Q of the osp families; the last row of Q meets A_n
_Q = {
    "B1_0n": [[1, -1], [-1, 0]],
    "B1_00n": [[2, -2, 0], [-1, 0, 1], [0, -1, 0]],
    "C1_0n": [[2, -1], [-2, 0]],
    "B2_0n": [[2, -2], [-1, 0]],
    "D2_0n": [[2, 0, -1], [0, 2, -1], [-1, -1, 0]],
    "D2_00n": [[2, 0, -1, 0], [0, 2, -1, 0], [-1, -1, 0, 1], [0, 0, -1, 0]],
}

# P as printed, (prefactor, integer matrix)
_P_PRINTED = {
    "B1_0n": (-1, [[0, 1], [1, 1]]),
    "B1_00n": (Fraction(1, 2), [[1, 0, -2], [0, 0, -2], [1, 2, -2]]),
    "C1_0n": (Fraction(-1, 2), [[0, 1], [2, 2]]),
    "B2_0n": (Fraction(-1, 2), [[0, 2], [1, 2]]),
    "D2_0n": (Fraction(-1, 4), [[1, -1, -2], [-1, 1, -2], [-2, -2, -4]]),
    "D2_00n": (Fraction(1, 2), [[1, 0, 0, -1], [0, 1, 0, -1], [0, 0, 0, -2], [1, 1, 2, -2]]),
}

# sign that turns the printed P into Q^-1 (D2_0n is printed with the opposite sign)
_P_SIGN = {"D2_0n": -1}


@dataclass(frozen=True)
class SerialFamily:
    tag: str
    m: int = 0
    n: int = 1

    def __post_init__(self):
        if self.tag not in TAGS:
            raise FamilyParameterError(f"unknown family {self.tag!r}")
        m, n = self.m, self.n
        if self.tag == "Am":
            if m < 1:
                raise FamilyParameterError("Am needs m >= 1")
        elif self.tag == "Sl_m0n":
            # n = 0 is the sl(m+1|1) matrix, the degenerate member of the same shape
            if m < 1 or n < 0:
                raise FamilyParameterError("Sl_m0n needs m >= 1 and n >= 0")
        elif self.tag == "Sl_m00n":
            if m < 1 or n < 1:
                raise FamilyParameterError("Sl_m00n needs m >= 1 and n >= 1")
        elif n < 1:
            raise FamilyParameterError(f"{self.tag} needs n >= 1")

    @property
    def dim(self) -> int:
        t, m, n = self.tag, self.m, self.n
        if t == "Am":
            return m
        if t in ("Tn", "Wn"):
            return n
        if t in ("Sl_m0n", "Sl_m00n"):
            return m + n + 1
        return len(_Q[t]) + n

    def __str__(self):
        if self.tag == "Am":
            return f"A_{self.m}"
        if self.tag in ("Tn", "Wn"):
            return f"{self.tag[0]}_{self.n}"
        if self.tag.startswith("Sl"):
            return f"{self.tag}(m={self.m}, n={self.n})"
        return f"{self.tag}(n={self.n})"


def parse_family(text: str) -> SerialFamily:
    """``"B1_0n:n=3"``, ``"Sl_m0n:m=1,n=2"`` or ``"Tn:4"``."""
    tag, _, rest = text.partition(":")
    kw = {}
    for part in filter(None, rest.split(",")):
        key, eq, val = part.partition("=")
        if not eq:
            key, val = ("m" if tag.strip() == "Am" else "n"), key
        key = key.strip()
        if key not in ("m", "n"):
            raise FamilyParameterError(f"unknown parameter {key!r} in {text!r}")
        try:
            kw[key] = int(val)
        except ValueError:
            raise FamilyParameterError(f"parameter {key} must be an integer in {text!r}") from None
    return SerialFamily(tag.strip(), **kw)


# ---------------------------------------------------------------------------
# plain integer matrices (lists of lists)

def _zeros(n):
    return [[0] * n for _ in range(n)]


def _a(n):
    return [[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(n)] for i in range(n)]


def _place(big, block, r, c):
    for i, row in enumerate(block):
        for j, x in enumerate(row):
            big[r + i][c + j] = x


def _rows(fam: SerialFamily):
    t, m, n = fam.tag, fam.m, fam.n
    if t == "Am":
        return _a(m)
    if t == "Tn":
        rows = _a(n)
        rows[-1][-1] = 1
        return rows
    if t == "Wn":
        raise UnsupportedFamilyForClosedForm("W_n is an inverse, use w_matrix")
    M = _zeros(fam.dim)
    if t == "Sl_m0n":
        _place(M, _a(m), 0, 0)
        _place(M, _a(n), m + 1, m + 1)
        M[m - 1][m] = M[m][m - 1] = -1
        if n:
            M[m][m + 1] = 1
            M[m + 1][m] = -1
        return M
    if t == "Sl_m00n":
        # rows m-1, m (0-based) form the middle pair; A_n meets the first of them
        _place(M, _a(m - 1), 0, 0)
        _place(M, _a(n), m + 1, m + 1)
        if m > 1:
            M[m - 2][m - 1] = M[m - 1][m - 2] = -1
        M[m - 1][m] = 1
        M[m][m - 1] = -1
        M[m][m + 1] = 1
        M[m + 1][m - 1] = -1
        return M
    Q = _Q[t]
    k = len(Q)
    _place(M, Q, 0, 0)
    _place(M, _a(n), k, k)
    M[k - 1][k] = 1
    M[k][k - 1] = -1
    return M


def family_matrix(fam: SerialFamily, field=None) -> CartanSpec:
    """The literal block matrix of the family, parities by the diagonal rule."""
    field = field if field is not None else Rational()
    m = Matrix.parse(_rows(fam), field)
    return CartanSpec(m, infer_parities(m), str(fam))


# ---------------------------------------------------------------------------
# closed forms

def _q(rows):
    return Matrix(rows, Rational())


def w_matrix(n: int) -> Matrix:
    """W_n = (A_n with top-left entry 1)^-1, entries n+1-max(i,j)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return _q([[n + 1 - max(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)])


def w_matrix_recursive(n: int) -> Matrix:
    """W_n built from its border (n, n-1, ..., 1) around W_{n-1}."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rows = [[1]]
    for k in range(2, n + 1):
        border = list(range(k, 0, -1))
        rows = [border] + [[border[i + 1]] + r for i, r in enumerate(rows)]
    return _q(rows)


def tau_matrix(n: int) -> Matrix:
    rows = _a(n)
    rows[0][0] = 1
    return _q(rows)


def _a_inverse(m):
    return [[Fraction(min(i, j) * (m + 1) - i * j, m + 1) for j in range(1, m + 1)]
            for i in range(1, m + 1)]


def _sl_m0n_inverse(m, n):
    if n == m:
        raise UnsupportedFamilyForClosedForm("m = n gives a singular matrix")
    s = Fraction(1, n - m)
    out = _zeros(m + n + 1)
    for i in range(1, m + 2):
        for j in range(1, m + 2):
            out[i - 1][j - 1] = s * (i * j + (n - m) * min(i, j))
        for j in range(1, n + 1):
            out[i - 1][m + j] = -s * i * (n + 1 - j)
            out[m + j][i - 1] = s * i * (n + 1 - j)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            out[m + i][m + j] = s * (min(i, j) - m - 1) * (n + 1 - max(i, j))
    return out


def _sl_m00n_inverse(m, n):
    """Invert the transformed matrix N blockwise, then undo the row/column moves."""
    size = m + n + 1
    k = m - 1                     # size of the A_{m-1} block
    W = w_matrix(n)
    X = _a_inverse(k) if k else []
    Ninv = _zeros(size)
    for i in range(k):
        for j in range(k):
            Ninv[i][j] = X[i][j]
        # K = -X U, U has -1 at (k-1, 0) of the middle pair
        Ninv[i][k] = X[i][k - 1]
    Ninv[k][k] = Ninv[k + 1][k + 1] = 1
    for b in range(n):
        # R = -V W with V = -e_(0,0);  L = X U V W
        Ninv[k][m + 1 + b] = W[0, b]
        for i in range(k):
            Ninv[i][m + 1 + b] = X[i][k - 1] * W[0, b]
        for a in range(n):
            Ninv[m + 1 + a][m + 1 + b] = W[a, b]
    Ninv = _q(Ninv)
    # N = Pd Pc Pb M Ea  =>  M^-1 = Ea N^-1 Pd Pc Pb   (1-based m-1, m, m+1, m+2)
    E = Matrix.identity(size, Rational())
    Ea = [list(r) for r in E.rows]
    if k:
        Ea[m][m - 2] = 1          # c(m-1) += c(m+1)
    Pb = [list(r) for r in E.rows]
    Pb[m + 1][m] = -1             # r(m+2) -= r(m+1)
    Pc = [list(r) for r in E.rows]
    Pc[m][m] = -1                 # r(m+1) = -r(m+1)
    Pd = [list(r) for r in E.rows]
    Pd[m - 1], Pd[m] = Pd[m], Pd[m - 1]   # r(m) <-> r(m+1)
    out = matmul(_q(Ea), Ninv)
    for P in (Pd, Pc, Pb):
        out = matmul(out, _q(P))
    return out


@dataclass(frozen=True)
class BlockRecipe:
    tag: str
    Q: Matrix
    P_printed: Matrix
    P: Matrix           # Q^-1: the printed P times the sign in P_sign
    P_sign: int
    m_block: int
    n: int

    @property
    def U(self) -> Matrix | list:
        """m x n with a single 1 in the bottom-left corner (as nested lists)."""
        return [[1 if (i == self.m_block - 1 and j == 0) else 0 for j in range(self.n)]
                for i in range(self.m_block)]

    @property
    def V(self):
        """n x m, the transpose of U; the family matrix holds -V below Q."""
        return [list(c) for c in zip(*self.U)]


def block_recipe(fam: SerialFamily) -> BlockRecipe:
    if fam.tag not in OSP_TAGS:
        raise UnsupportedFamilyForClosedForm(f"no block recipe for {fam.tag}")
    s, rows = _P_PRINTED[fam.tag]
    printed = _q(rows).scale(s)
    sign = _P_SIGN.get(fam.tag, 1)
    return BlockRecipe(fam.tag, _q(_Q[fam.tag]), printed, printed.scale(sign), sign,
                       len(_Q[fam.tag]), fam.n)


def osp_blocks(fam: SerialFamily):
    """(F, G, H, W_n) of the inverse [[F, G], [H, W_n]].

    F_ij = P_ij - n P_im P_mj, G_ib = -(n-b+1) P_im, H_aj = (n-a+1) P_mj.
    """
    r = block_recipe(fam)
    P, k, n = r.P, r.m_block, fam.n
    F = _q([[P[i, j] - n * P[i, k - 1] * P[k - 1, j] for j in range(k)] for i in range(k)])
    G = [[-(n - b) * P[i, k - 1] for b in range(n)] for i in range(k)]
    H = [[(n - a) * P[k - 1, j] for j in range(k)] for a in range(n)]
    return F, G, H, w_matrix(n)


def printed_f_block(fam: SerialFamily) -> Matrix:
    """F exactly as printed, for the two families where it is printed."""
    n = fam.n
    if fam.tag == "B1_0n":
        return _q([[-n, -(n + 1)], [-(n + 1), -(n + 1)]])
    if fam.tag == "B2_0n":
        return _q([[2, 4 * (n + 1)], [n + 2, 4 * (n + 1)]]).scale(Fraction(-1, 4))
    raise UnsupportedFamilyForClosedForm(f"F is not printed for {fam.tag}")


def closed_inverse(fam: SerialFamily) -> Matrix:
    """Inverse of ``family_matrix(fam)`` over Q from closed formulas."""
    t, m, n = fam.tag, fam.m, fam.n
    if t == "Wn":
        raise UnsupportedFamilyForClosedForm("W_n is itself an inverse; see w_matrix")
    if t == "Am":
        return _q(_a_inverse(m))
    if t == "Tn":
        return _q([[min(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)])
    if t == "Sl_m0n":
        return _q(_sl_m0n_inverse(m, n))
    if t == "Sl_m00n":
        return _sl_m00n_inverse(m, n)
    F, G, H, W = osp_blocks(fam)
    k = F.n
    out = _zeros(k + n)
    _place(out, [list(r) for r in F.rows], 0, 0)
    _place(out, G, 0, k)
    _place(out, H, k, 0)
    _place(out, [list(r) for r in W.rows], k, k)
    return _q(out)
