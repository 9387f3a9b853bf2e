"""Exact coefficient arithmetic over Z[q^(1/2), q^(-1/2)] and F_p[q^(1/2), q^(-1/2)].

Exponents are stored doubled, so ``q^(3/2)`` is the term ``{3: 1}``.  Elements of
the fraction field appear only where a computation leaves the Laurent ring (for
instance when a presentation is not yet integral); they are kept in
:class:`RationalScalar` and demoted back to :class:`LaurentScalar` whenever the
denominator becomes a unit.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union


class DivisionByZero(ZeroDivisionError):
    pass


class CharacteristicMismatch(ValueError):
    pass


@dataclass(frozen=True, order=True)
class HalfInt:
    """An element of (1/2)Z, stored as twice its value."""

    twice: int

    @classmethod
    def of(cls, value) -> "HalfInt":
        if isinstance(value, HalfInt):
            return value
        value = Fraction(value)
        if (2 * value).denominator != 1:
            raise ValueError(f"{value} is not a half-integer")
        return cls(int(2 * value))

    def __add__(self, other):
        return HalfInt(self.twice + HalfInt.of(other).twice)

    __radd__ = __add__

    def __sub__(self, other):
        return HalfInt(self.twice - HalfInt.of(other).twice)

    def __rsub__(self, other):
        return HalfInt(HalfInt.of(other).twice - self.twice)

    def __neg__(self):
        return HalfInt(-self.twice)

    def __mul__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        return HalfInt(self.twice * n)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, HalfInt):
            return self.twice == other.twice
        if isinstance(other, (int, Fraction)):
            return Fraction(self.twice, 2) == other
        return NotImplemented

    def __hash__(self):
        return hash(("HalfInt", self.twice))

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __str__(self):
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    __repr__ = __str__


def _reduce(c: int, char: int) -> int:
    return c % char if char else c


class LaurentScalar:
    """Sparse Laurent polynomial in q^(1/2) with integer or F_p coefficients."""

    __slots__ = ("terms", "char", "_hash")

    def __init__(self, terms=None, char: int = 0):
        clean = {}
        if terms:
            for e, c in dict(terms).items():
                c = _reduce(int(c), char)
                if c:
                    clean[int(e)] = c
        self.terms = clean
        self.char = char
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, c: int, char: int = 0) -> "LaurentScalar":
        return cls({0: c}, char)

    @classmethod
    def qpow(cls, exp2: int, coeff: int = 1, char: int = 0) -> "LaurentScalar":
        """``coeff * q^(exp2/2)``."""
        return cls({exp2: coeff}, char)

    @classmethod
    def from_pairs(cls, pairs: Iterable, char: int = 0) -> "LaurentScalar":
        return cls({int(e): int(c) for e, c in pairs}, char)

    def to_pairs(self) -> list:
        return [[e, self.terms[e]] for e in sorted(self.terms)]

    # -- coercion -----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, LaurentScalar):
            if other.char != self.char:
                raise CharacteristicMismatch(f"characteristic {self.char} vs {other.char}")
            return other
        if isinstance(other, int):
            return LaurentScalar.const(other, self.char)
        return None

    # -- ring operations ----------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in o.terms.items():
            terms[e] = terms.get(e, 0) + c
        return LaurentScalar(terms, self.char)

    __radd__ = __add__

    def __neg__(self):
        return LaurentScalar({e: -c for e, c in self.terms.items()}, self.char)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.terms or not o.terms:
            return LaurentScalar({}, self.char)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                terms[e1 + e2] = terms.get(e1 + e2, 0) + c1 * c2
        return LaurentScalar(terms, self.char)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            u = is_unit_monomial(self)
            if u is None:
                raise ValueError("negative power of a non-unit")
            return u.inverse().to_scalar(self.char) ** (-n)
        result = LaurentScalar.const(1, self.char)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        return field_divide(self, other)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return field_divide(o, self)

    # -- comparison ---------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, LaurentScalar):
            return self.char == other.char and self.terms == other.terms
        if isinstance(other, int):
            return self.terms == LaurentScalar.const(other, self.char).terms
        if isinstance(other, RationalScalar):
            return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.char, tuple(sorted(self.terms.items()))))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- queries ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def min_exp2(self) -> int:
        return min(self.terms)

    def max_exp2(self) -> int:
        return max(self.terms)

    def has_integer_exponents(self) -> bool:
        return all(e % 2 == 0 for e in self.terms)

    def bar(self) -> "LaurentScalar":
        """The involution q^(1/2) -> q^(-1/2)."""
        return LaurentScalar({-e: c for e, c in self.terms.items()}, self.char)

    def __repr__(self):
        return f"LaurentScalar({self})"

    def __str__(self):
        return format_laurent(self.terms)


def format_laurent(terms: dict) -> str:
    if not terms:
        return "0"
    out = []
    for e in sorted(terms, reverse=True):
        c = terms[e]
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            ex = str(e // 2) if e % 2 == 0 else f"{e}/2"
            qpart = "q" if ex == "1" else f"q^({ex})" if "/" in ex or ex.startswith("-") else f"q^{ex}"
            body = qpart if mag == 1 else f"{mag}*{qpart}"
        out.append((sign, body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


@dataclass(frozen=True)
class UnitMonomial:
    """``sign * q^exponent`` with sign in {+1, -1}."""

    sign: int
    exponent: HalfInt

    def __mul__(self, other: "UnitMonomial") -> "UnitMonomial":
        return UnitMonomial(self.sign * other.sign, self.exponent + other.exponent)

    def inverse(self) -> "UnitMonomial":
        return UnitMonomial(self.sign, -self.exponent)

    def to_scalar(self, char: int = 0) -> LaurentScalar:
        return LaurentScalar.qpow(self.exponent.twice, self.sign, char)


def is_unit_monomial(s) -> Optional[UnitMonomial]:
    if not isinstance(s, LaurentScalar) or len(s.terms) != 1:
        return None
    (e, c), = s.terms.items()
    if c == 1:
        return UnitMonomial(1, HalfInt(e))
    if (s.char == 0 and c == -1) or (s.char and c == s.char - 1):
        return UnitMonomial(-1, HalfInt(e))
    return None


# -- division -----------------------------------------------------------

def _dense(s: LaurentScalar) -> tuple:
    """(shift, coefficients low to high) with nonzero constant term."""
    lo, hi = s.min_exp2(), s.max_exp2()
    return lo, [s.terms.get(e, 0) for e in range(lo, hi + 1)]


def divide_exact(a: LaurentScalar, b: LaurentScalar) -> Optional[LaurentScalar]:
    """Return ``c`` with ``a == b*c`` in the Laurent ring, or ``None``."""
    if isinstance(b, int):
        b = LaurentScalar.const(b, a.char)
    if isinstance(a, int):
        a = LaurentScalar.const(a, b.char)
    if b.is_zero():
        raise DivisionByZero("division by zero Laurent scalar")
    if a.char != b.char:
        raise CharacteristicMismatch(f"characteristic {a.char} vs {b.char}")
    if a.is_zero():
        return a
    char = a.char
    sa, num = _dense(a)
    sb, den = _dense(b)
    if len(den) > len(num):
        return None
    lead = den[-1]
    inv = pow(lead, -1, char) if char else None
    num = list(num)
    quot = [0] * (len(num) - len(den) + 1)
    for i in range(len(quot) - 1, -1, -1):
        top = num[i + len(den) - 1]
        if char:
            c = top * inv % char
        else:
            if top % lead:
                return None
            c = top // lead
        quot[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
                if char:
                    num[i + j] %= char
    if any(num[: len(den) - 1]):
        return None
    return LaurentScalar({sa - sb + i: c for i, c in enumerate(quot)}, char)


def _to_poly(coeffs: list, char: int):
    from sympy import Poly, symbols
    s = symbols("s")
    if char:
        return Poly(list(reversed(coeffs)), s, modulus=char)
    return Poly(list(reversed(coeffs)), s, domain="ZZ")


def _from_poly(poly, shift: int, char: int) -> LaurentScalar:
    coeffs = [int(c) for c in reversed(poly.all_coeffs())]
    return LaurentScalar({shift + i: c for i, c in enumerate(coeffs)}, char)


class RationalScalar:
    """Element of the fraction field, kept as num/den with den a polynomial
    in q^(1/2) with nonzero constant term, positive (or monic) leading
    coefficient and no common factor with num."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentScalar, den: LaurentScalar):
        self.num = num
        self.den = den

    @property
    def char(self):
        return self.num.char

    def __add__(self, other):
        n2, d2 = as_fraction(other, self.char)
        return make_fraction(self.num * d2 + n2 * self.den, self.den * d2)

    __radd__ = __add__

    def __neg__(self):
        return RationalScalar(-self.num, self.den)

    def __sub__(self, other):
        n2, d2 = as_fraction(other, self.char)
        return make_fraction(self.num * d2 - n2 * self.den, self.den * d2)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        n2, d2 = as_fraction(other, self.char)
        return make_fraction(self.num * n2, self.den * d2)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return field_divide(self, other)

    def __rtruediv__(self, other):
        return field_divide(other, self)

    def __pow__(self, n: int):
        if n < 0:
            return field_divide(1, self ** (-n))
        return make_fraction(self.num ** n, self.den ** n)

    def __eq__(self, other):
        if isinstance(other, RationalScalar):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (LaurentScalar, int)):
            return False
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return True

    def is_zero(self):
        return False

    def __repr__(self):
        return f"RationalScalar({self})"

    def __str__(self):
        return f"({self.num})/({self.den})"


Scalar = Union[LaurentScalar, RationalScalar]


def as_fraction(x, char: int = 0) -> tuple:
    if isinstance(x, RationalScalar):
        return x.num, x.den
    if isinstance(x, int):
        x = LaurentScalar.const(x, char)
    return x, LaurentScalar.const(1, x.char)


def make_fraction(num: LaurentScalar, den: LaurentScalar) -> Scalar:
    """Normalize num/den, demoting to a Laurent scalar when possible."""
    char = num.char
    if den.is_zero():
        raise DivisionByZero("zero denominator")
    if num.is_zero():
        return num
    q = divide_exact(num, den)
    if q is not None:
        return q
    sn, cn = _dense(num)
    sd, cd = _dense(den)
    pn, pd = _to_poly(cn, char), _to_poly(cd, char)
    g = pn.gcd(pd)
    pn, pd = pn.exquo(g), pd.exquo(g)
    lead = int(pd.LC())
    if char:
        inv = pow(lead % char, -1, char)
        pn, pd = pn * inv, pd * inv
    elif lead < 0:
        pn, pd = -pn, -pd
    n = _from_poly(pn, sn - sd, char)
    d = _from_poly(pd, 0, char)
    q = divide_exact(n, d)
    if q is not None:
        return q
    return RationalScalar(n, d)


def field_divide(a, b) -> Scalar:
    """a/b in the fraction field; a Laurent scalar when the quotient is one."""
    char = a.char if hasattr(a, "char") else b.char
    n1, d1 = as_fraction(a, char)
    n2, d2 = as_fraction(b, char)
    if n2.is_zero():
        raise DivisionByZero("division by zero")
    return make_fraction(n1 * d2, d1 * n2)


def is_laurent(x) -> bool:
    return isinstance(x, (LaurentScalar, int))


def dump_scalar(x) -> object:
    if isinstance(x, RationalScalar):
        return {"num": x.num.to_pairs(), "den": x.den.to_pairs()}
    return x.to_pairs()


def load_scalar(obj, char: int = 0) -> Scalar:
    if isinstance(obj, dict):
        return make_fraction(LaurentScalar.from_pairs(obj["num"], char),
                             LaurentScalar.from_pairs(obj["den"], char))
    return LaurentScalar.from_pairs(obj, char)


def qint(n: int, char: int = 0) -> LaurentScalar:
    """Symmetric quantum integer [n]_q = q^(n-1) + q^(n-3) + ... + q^(1-n)."""
    return LaurentScalar({2 * (n - 1 - 2 * i): 1 for i in range(n)}, char)


def laurent_lcm(a: LaurentScalar, b: LaurentScalar) -> LaurentScalar:
    """Least common multiple up to units; result is a polynomial with nonzero constant term."""
    if a.char != b.char:
        raise CharacteristicMismatch(f"characteristic {a.char} vs {b.char}")
    _, ca = _dense(a)
    _, cb = _dense(b)
    pa, pb = _to_poly(ca, a.char), _to_poly(cb, a.char)
    m = pa.lcm(pb)
    out = _from_poly(m, 0, a.char)
    if not a.char and out.terms[out.max_exp2()] < 0:
        out = -out
    return out
