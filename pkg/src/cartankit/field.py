"""Exact scalars over Q, prime fields F_p and univariate rational-function fields.

Three descriptors share one small contract::

    F.zero, F.one, F.embed(n), F.parse(text), F.render(x), F.is_zero(x)

Elements are ordinary Python objects with arithmetic operators:

* ``Rational()``          -> :class:`fractions.Fraction`
* ``PrimeField(p)``       -> :class:`Residue`
* ``FunctionField(B, v)`` -> :class:`RationalFunction` with coefficients in ``B``

>>> F = FunctionField(Rational(), "a")
>>> F.render(F.parse("(2*a+1)/(5*a+4)"))
'(2/5*a+1/5)/(a+4/5)'
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction


class FieldMismatch(ValueError):
    """Operands live in different fields."""


class ScalarParseError(ValueError):
    def __init__(self, msg, text, pos):
        super().__init__(f"{msg} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# prime field elements

class Residue:
    """Element of Z/pZ, stored as the least non-negative representative."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _other(self, other):
        if isinstance(other, Residue):
            if other.p != self.p:
                raise FieldMismatch(f"F_{self.p} vs F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Residue(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Residue(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Residue(o - self.value, self.p)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Residue(self.value * o, self.p)

    __rmul__ = __mul__

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return Residue(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * Residue(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Residue(o, self.p) * self.inverse()

    def __neg__(self):
        return Residue(-self.value, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return Residue(pow(self.value, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Residue({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


# ---------------------------------------------------------------------------
# dense univariate polynomials: tuples of coefficients, lowest degree first,
# no trailing zeros; () is the zero polynomial

def _trim(c):
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    return _trim([x + y for x, y in zip(a, b)] + list(a[len(b):]))


def _pneg(a):
    return tuple(-x for x in a)


def _psub(a, b):
    return _padd(a, _pneg(b))


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [a[0] * 0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _trim(out)


def _pscale(a, s):
    return _trim([x * s for x in a])


def _pdivmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [b[-1] * 0] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    lead = b[-1]
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        f = r[-1] / lead
        q[shift] = f
        for i, y in enumerate(b):
            r[shift + i] = r[shift + i] - f * y
        r = list(_trim(r))
    return _trim(q), tuple(r)


def _pmonic(a):
    return _pscale(a, 1 / a[-1]) if a else a


def _pgcd(a, b):
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return _pmonic(a)


# ---------------------------------------------------------------------------
# field descriptors

@dataclass(frozen=True)
class Rational:
    """The field Q; elements are ``Fraction``."""

    characteristic = 0
    ordered = True

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def embed(self, n: int) -> Fraction:
        return Fraction(n)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise FieldMismatch(f"{x!r} is not a rational")

    def is_zero(self, x) -> bool:
        return x == 0

    def parse(self, text: str) -> Fraction:
        return _Parser(text, self).run()

    def render(self, x) -> str:
        return str(x)

    def __str__(self):
        return "Q"


@dataclass(frozen=True)
class PrimeField:
    """F_p for a prime p; elements are :class:`Residue`."""

    p: int
    ordered = False

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def characteristic(self):
        return self.p

    @property
    def zero(self):
        return Residue(0, self.p)

    @property
    def one(self):
        return Residue(1, self.p)

    def embed(self, n: int) -> Residue:
        return Residue(n, self.p)

    def coerce(self, x):
        if isinstance(x, Residue):
            if x.p != self.p:
                raise FieldMismatch(f"element of F_{x.p} used in F_{self.p}")
            return x
        if isinstance(x, int):
            return Residue(x, self.p)
        if isinstance(x, Fraction):
            return Residue(x.numerator, self.p) / Residue(x.denominator, self.p)
        raise FieldMismatch(f"{x!r} is not in F_{self.p}")

    def is_zero(self, x) -> bool:
        return x.value == 0

    def parse(self, text: str) -> Residue:
        return _Parser(text, self).run()

    def render(self, x) -> str:
        return str(x.value)

    def __str__(self):
        return f"F_{self.p}"


@dataclass(frozen=True)
class FunctionField:
    """The rational-function field base(var) in one indeterminate."""

    base: Rational | PrimeField
    var: str = "a"
    ordered = False

    def __post_init__(self):
        if isinstance(self.base, FunctionField):
            raise ValueError("only one indeterminate is supported")
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", self.var):
            raise ValueError(f"bad variable name {self.var!r}")

    @property
    def characteristic(self):
        return self.base.characteristic

    @property
    def zero(self):
        return RationalFunction((), (self.base.one,), self)

    @property
    def one(self):
        return self.embed(1)

    @property
    def gen(self):
        """The indeterminate itself."""
        return RationalFunction((self.base.zero, self.base.one), (self.base.one,), self)

    def embed(self, n) -> "RationalFunction":
        c = self.base.coerce(n) if not isinstance(n, int) else self.base.embed(n)
        return RationalFunction(_trim([c]), (self.base.one,), self)

    def coerce(self, x):
        if isinstance(x, RationalFunction):
            if x.field != self:
                raise FieldMismatch(f"element of {x.field} used in {self}")
            return x
        return self.embed(self.base.coerce(x) if not isinstance(x, int) else x)

    def is_zero(self, x) -> bool:
        return not x.num

    def parse(self, text: str) -> "RationalFunction":
        return _Parser(text, self).run()

    def render(self, x) -> str:
        return str(x)

    def __str__(self):
        return f"{self.base}({self.var})"


# ---------------------------------------------------------------------------
# rational functions

class RationalFunction:
    """num/den over ``field.base``, always reduced with monic denominator."""

    __slots__ = ("num", "den", "field")

    def __init__(self, num, den, field: FunctionField, reduce=True):
        num = _trim(num)
        den = _trim(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if reduce:
            if not num:
                den = (field.base.one,)
            else:
                g = _pgcd(num, den)
                if len(g) > 1:
                    num = _pdivmod(num, g)[0]
                    den = _pdivmod(den, g)[0]
                lead = den[-1]
                if lead != 1:
                    num = _pscale(num, 1 / lead)
                    den = _pscale(den, 1 / lead)
        self.num = num
        self.den = den
        self.field = field

    def _other(self, other):
        if isinstance(other, RationalFunction):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction, Residue)):
            return self.field.coerce(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RationalFunction(_padd(self.num, o.num), self.den, self.field)
        return RationalFunction(
            _padd(_pmul(self.num, o.den), _pmul(o.num, self.den)),
            _pmul(self.den, o.den), self.field)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(_pneg(self.num), self.den, self.field, reduce=False)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RationalFunction(_pmul(self.num, o.num), _pmul(self.den, o.den), self.field)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("zero has no inverse")
        return RationalFunction(self.den, self.num, self.field)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.field.one
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.field == other.field and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, Residue)):
            return self == self.field.coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    @property
    def degree(self) -> int:
        """Total degree, deg(num) + deg(den); used to rank pivots."""
        return max(len(self.num) - 1, 0) + len(self.den) - 1

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def constant(self):
        """The base-field value of a constant function."""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num[0] if self.num else self.field.base.zero

    def __call__(self, value):
        """Evaluate at a base-field value, or substitute another element of
        the same function field (ZeroDivisionError at a pole)."""
        def ev(poly):
            acc = self.field.base.zero
            for c in reversed(poly):
                acc = acc * value + c
            return acc
        return ev(self.num) / ev(self.den)

    def __str__(self):
        num = _render_poly(self.num, self.field)
        if len(self.den) == 1:
            return num
        den = _render_poly(self.den, self.field)
        if sum(1 for c in self.num if c) > 1 or "/" in num:
            num = f"({num})"
        if sum(1 for c in self.den if c) > 1:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"RationalFunction({self})"


def _render_poly(poly, field: FunctionField) -> str:
    if not poly:
        return "0"
    v = field.var
    out = []
    for d in range(len(poly) - 1, -1, -1):
        c = poly[d]
        if not c:
            continue
        cs = field.base.render(c)
        mono = "" if d == 0 else (v if d == 1 else f"{v}^{d}")
        if not mono:
            term = cs
        elif cs == "1":
            term = mono
        elif cs == "-1":
            term = "-" + mono
        else:
            term = f"{cs}*{mono}"
        if out and not term.startswith("-"):
            term = "+" + term
        out.append(term)
    return "".join(out)


# ---------------------------------------------------------------------------
# scalar grammar

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class _Parser:
    """Recursive descent over ``+ - * / ^ ( )``, integers and one variable."""

    def __init__(self, text, field):
        self.text = text
        self.field = field
        self.toks = []
        for m in _TOKEN.finditer(text):
            if m.group(0).strip() == "":
                continue
            num, name, sym = m.groups()
            pos = m.start(m.lastindex)
            if num is not None:
                self.toks.append(("num", int(num), pos))
            elif name is not None:
                self.toks.append(("var", name, pos))
            elif sym in "+-*/^()":
                self.toks.append((sym, sym, pos))
            else:
                raise ScalarParseError(f"unexpected character {sym!r}", text, pos)
        self.i = 0

    def error(self, msg):
        pos = self.toks[self.i][2] if self.i < len(self.toks) else len(self.text)
        raise ScalarParseError(msg, self.text, pos)

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, kind=None):
        if kind is not None and self.peek() != kind:
            self.error(f"expected {kind!r}")
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def run(self):
        if not self.toks:
            self.error("empty scalar")
        value = self.expr()
        if self.i != len(self.toks):
            self.error("trailing input")
        return value

    def expr(self):
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()[0]
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if self.field.is_zero(rhs):
                    self.error("division by zero")
                value = value / rhs
        return value

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        value = self.atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            exp = sign * self.take("num")[1]
            if exp < 0 and self.field.is_zero(value):
                self.error("division by zero")
            value = value ** exp
        return value

    def atom(self):
        kind = self.peek()
        if kind == "num":
            return self.field.embed(self.take()[1])
        if kind == "var":
            name = self.toks[self.i][1]
            if not isinstance(self.field, FunctionField):
                self.error(f"variable {name!r} outside a function field")
            if name != self.field.var:
                self.error(f"unknown variable {name!r}")
            self.take()
            return self.field.gen
        if kind == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        self.error("expected a number, variable or '('")


def parse_scalar(text: str, field):
    return field.parse(text)


def render_scalar(x, field) -> str:
    return field.render(x)


def embed_integer(n: int, field):
    return field.embed(n)


def field_from_spec(characteristic: int = 0, variable: str | None = None):
    """Descriptor for a characteristic (0 or prime) and optional variable."""
    base = Rational() if characteristic == 0 else PrimeField(characteristic)
    return FunctionField(base, variable) if variable else base
