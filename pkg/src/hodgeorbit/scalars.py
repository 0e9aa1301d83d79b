"""Exact scalars: rationals and Gaussian rationals Q(i).

A scalar is stored as a normalized integer triple (a, b, d) representing
(a + b*i)/d with d > 0 and gcd(a, b, d) = 1, so all arithmetic runs on
machine/long integers.  Nothing is ever rounded; equality is decidable.
Transcendental periods (powers of 2*pi*i) are never stored as numbers --
they live in integer twist tags on pairings and data.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class GaussScalar:
    """An element (a + b*i)/d of Q(i), held as a reduced integer triple."""

    __slots__ = ("a", "b", "d")

    def __init__(self, re=0, im=0):
        re = _frac(re)
        im = _frac(im)
        d = re.denominator * im.denominator
        a = re.numerator * im.denominator
        b = im.numerator * re.denominator
        g = gcd(gcd(a, b), d)
        if g > 1:
            a //= g
            b //= g
            d //= g
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    @staticmethod
    def _raw(a: int, b: int, d: int) -> "GaussScalar":
        if d < 0:
            a, b, d = -a, -b, -d
        if d != 1:
            g = gcd(gcd(a, b), d)
            if g > 1:
                a //= g
                b //= g
                d //= g
        out = object.__new__(GaussScalar)
        object.__setattr__(out, "a", a)
        object.__setattr__(out, "b", b)
        object.__setattr__(out, "d", d)
        return out

    def __setattr__(self, name, value):
        raise AttributeError("GaussScalar is immutable")

    # -- views ----------------------------------------------------------

    @property
    def re(self) -> Fraction:
        return Fraction(self.a, self.d)

    @property
    def im(self) -> Fraction:
        return Fraction(self.b, self.d)

    # -- constructors -----------------------------------------------------

    @staticmethod
    def of(x) -> "GaussScalar":
        if isinstance(x, GaussScalar):
            return x
        if isinstance(x, int):
            return GaussScalar._raw(x, 0, 1)
        if isinstance(x, Fraction):
            return GaussScalar._raw(x.numerator, 0, x.denominator)
        if isinstance(x, str):
            f = Fraction(x)
            return GaussScalar._raw(f.numerator, 0, f.denominator)
        raise TypeError(f"cannot view {x!r} as a Gaussian rational")

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, GaussScalar):
            other = GaussScalar.of(other)
        return GaussScalar._raw(
            self.a * other.d + other.a * self.d,
            self.b * other.d + other.b * self.d,
            self.d * other.d,
        )

    __radd__ = __add__

    def __neg__(self):
        return GaussScalar._raw(-self.a, -self.b, self.d)

    def __sub__(self, other):
        if not isinstance(other, GaussScalar):
            other = GaussScalar.of(other)
        return GaussScalar._raw(
            self.a * other.d - other.a * self.d,
            self.b * other.d - other.b * self.d,
            self.d * other.d,
        )

    def __rsub__(self, other):
        return GaussScalar.of(other) - self

    def __mul__(self, other):
        if not isinstance(other, GaussScalar):
            other = GaussScalar.of(other)
        return GaussScalar._raw(
            self.a * other.a - self.b * other.b,
            self.a * other.b + self.b * other.a,
            self.d * other.d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, GaussScalar):
            other = GaussScalar.of(other)
        n = other.a * other.a + other.b * other.b
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussScalar._raw(
            (self.a * other.a + self.b * other.b) * other.d,
            (self.b * other.a - self.a * other.b) * other.d,
            self.d * n,
        )

    def __rtruediv__(self, other):
        return GaussScalar.of(other) / self

    def conjugate(self) -> "GaussScalar":
        return GaussScalar._raw(self.a, -self.b, self.d)

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GaussScalar.of(other)
        if not isinstance(other, GaussScalar):
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.d == other.d

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __repr__(self):
        if self.b == 0:
            return str(Fraction(self.a, self.d))
        if self.a == 0:
            return f"{Fraction(self.b, self.d)}i"
        sign = "+" if self.b > 0 else "-"
        return f"{Fraction(self.a, self.d)}{sign}{abs(Fraction(self.b, self.d))}i"


ZERO = GaussScalar(0)
ONE = GaussScalar(1)
I = GaussScalar(0, 1)


def rational(x) -> GaussScalar:
    """Coerce an exact rational into Q(i)."""
    return GaussScalar.of(x)


def imaginary(x) -> GaussScalar:
    """The purely imaginary scalar i*x for exact rational x."""
    f = _frac(x)
    return GaussScalar._raw(0, f.numerator, f.denominator)
