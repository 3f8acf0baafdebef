"""Exact arithmetic in the real quadratic field Q(sqrt 2).

Rationals are :class:`fractions.Fraction`; an element ``a + b*sqrt(2)`` is a
:class:`QSqrt2`.  Everything here is immutable and cache-free.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

__all__ = [
    "QSqrt2",
    "ZERO",
    "ONE",
    "SQRT2",
    "SQRT2_HALF",
    "add",
    "mul",
    "inv",
    "pochhammer",
    "sqrt2_half_pow",
    "to_float",
    "parse_rational",
    "rational_str",
]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class QSqrt2:
    """The number ``a + b*sqrt(2)`` with rational ``a`` and ``b``.

    Since sqrt(2) is irrational the pair ``(a, b)`` is unique, so equality and
    hashing are componentwise.  Ints and Fractions mix in freely.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", _frac(a))
        object.__setattr__(self, "b", _frac(b))

    def __setattr__(self, name, value):
        raise AttributeError("QSqrt2 is immutable")

    def __reduce__(self):
        return (QSqrt2, (self.a, self.b))

    @classmethod
    def _make(cls, a: Fraction, b: Fraction) -> QSqrt2:
        # trusted constructor: both parts are already Fractions
        x = object.__new__(cls)
        object.__setattr__(x, "a", a)
        object.__setattr__(x, "b", b)
        return x

    @classmethod
    def coerce(cls, x) -> QSqrt2:
        if isinstance(x, QSqrt2):
            return x
        return cls(x, 0)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, QSqrt2):
            return QSqrt2._make(self.a + other.a, self.b + other.b)
        if isinstance(other, (int, Fraction)):
            return QSqrt2(self.a + other, self.b)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return QSqrt2._make(-self.a, -self.b)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, QSqrt2):
            return QSqrt2._make(self.a - other.a, self.b - other.b)
        if isinstance(other, (int, Fraction)):
            return QSqrt2(self.a - other, self.b)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return QSqrt2(other - self.a, -self.b)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, QSqrt2):
            a1, b1, a2, b2 = self.a, self.b, other.a, other.b
            # most values met in practice are purely rational or purely irrational
            if not b1:
                return QSqrt2._make(a1 * a2, a1 * b2)
            if not a1:
                return QSqrt2._make(2 * b1 * b2, b1 * a2)
            if not b2:
                return QSqrt2._make(a1 * a2, b1 * a2)
            if not a2:
                return QSqrt2._make(2 * b1 * b2, a1 * b2)
            return QSqrt2._make(a1 * a2 + 2 * b1 * b2, a1 * b2 + a2 * b1)
        if isinstance(other, (int, Fraction)):
            return QSqrt2(self.a * other, self.b * other)
        return NotImplemented

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm ``a**2 - 2*b**2``; zero only for the zero element."""
        return self.a * self.a - 2 * self.b * self.b

    def conjugate(self) -> QSqrt2:
        return QSqrt2(self.a, -self.b)

    def inverse(self) -> QSqrt2:
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(sqrt 2)")
        n = self.norm()
        return QSqrt2(self.a / n, -self.b / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(sqrt 2)")
            return QSqrt2(self.a / other, self.b / other)
        if isinstance(other, QSqrt2):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return QSqrt2(other) * self.inverse()
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- comparison ---------------------------------------------------------

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, QSqrt2):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def sign(self) -> int:
        """Exact sign of ``a + b*sqrt(2)``."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # opposite signs: the larger of a**2 and 2*b**2 wins
        lhs, rhs = self.a * self.a, 2 * self.b * self.b
        return sa if lhs > rhs else sb

    def _cmp(self, other) -> int:
        if isinstance(other, (int, Fraction)):
            other = QSqrt2(other)
        elif not isinstance(other, QSqrt2):
            return NotImplemented
        return (self - other).sign()

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    # -- conversion ---------------------------------------------------------

    def is_rational(self) -> bool:
        return self.b == 0

    def __float__(self):
        return to_float(self)

    def __repr__(self):
        return f"QSqrt2({rational_str(self.a)!r}, {rational_str(self.b)!r})"

    def __str__(self):
        if self.b == 0:
            return _plain(self.a)
        if self.a == 0:
            return f"{_plain(self.b)}√2"
        sign = "-" if self.b < 0 else "+"
        return f"{_plain(self.a)} {sign} {_plain(abs(self.b))}√2"

    def to_json(self) -> dict:
        return {"a": rational_str(self.a), "b": rational_str(self.b)}

    @classmethod
    def from_json(cls, obj: dict) -> QSqrt2:
        return cls(parse_rational(obj["a"]), parse_rational(obj["b"]))


def _plain(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


ZERO = QSqrt2(0, 0)
ONE = QSqrt2(1, 0)
SQRT2 = QSqrt2(0, 1)
SQRT2_HALF = QSqrt2(0, Fraction(1, 2))


def add(x: QSqrt2, y: QSqrt2) -> QSqrt2:
    return x + y


def mul(x: QSqrt2, y: QSqrt2) -> QSqrt2:
    return x * y


def inv(x: QSqrt2) -> QSqrt2:
    """Multiplicative inverse via the conjugate; ZeroDivisionError on zero."""
    return QSqrt2.coerce(x).inverse()


def pochhammer(gamma, n: int) -> Fraction:
    """Rising factorial ``gamma*(gamma+1)*...*(gamma+n-1)``; 1 when n == 0."""
    if n < 0:
        raise ValueError("pochhammer needs n >= 0")
    gamma = _frac(gamma)
    result = Fraction(1)
    for i in range(n):
        result *= gamma + i
    return result


def sqrt2_half_pow(e: int) -> QSqrt2:
    """``(sqrt(2)/2)**e`` as ``2**(-e/2)`` (e even) or ``2**(-(e+1)/2)*sqrt(2)`` (e odd)."""
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    if e % 2 == 0:
        return QSqrt2(Fraction(1, 2 ** (e // 2)), 0)
    return QSqrt2(0, Fraction(1, 2 ** ((e + 1) // 2)))


def to_float(x) -> float:
    """Nearest binary64 to ``a + b*sqrt(2)`` (within one ulp).

    The irrational part is approximated by an integer square root carrying
    enough guard bits that the final Fraction -> float rounding dominates.
    Raises OverflowError past the binary64 range.
    """
    x = QSqrt2.coerce(x)
    if x.b == 0:
        return float(x.a)
    b = x.b
    # |b|*sqrt(2) = sqrt(2*p**2) / q, scaled by 2**k before the isqrt
    p, q = abs(b.numerator), b.denominator
    k = 2 * (max(p.bit_length(), q.bit_length(), x.a.numerator.bit_length(),
                 x.a.denominator.bit_length()) + 128)
    root = math.isqrt(2 * p * p << (2 * k))
    irr = Fraction(root, q << k)
    if b < 0:
        irr = -irr
    return float(x.a + irr)


def rational_str(q) -> str:
    """Reduced ``"p/q"`` with ``q > 0``; integers keep the ``/1``."""
    q = _frac(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or an integer string into a Fraction.

    Decimal and exponent forms are rejected so inputs stay exact.
    """
    s = str(text).strip()
    num, sep, den = s.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed rational {text!r}") from None
    if d == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(n, d)
