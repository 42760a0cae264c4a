"""Exact scalar arithmetic and the combinatorial primitives used everywhere else.

All coefficient-level computation in this package runs over
``fractions.Fraction``.  Floating point enters only where square roots are
genuinely unavoidable (displayed normalized coefficients, curvature away from
the origin, the orthonormal-basis example); each such spot is marked in the
module that owns it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, isqrt

Rational = Fraction


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {x!r}")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` (or a bare integer string) into an exact rational."""
    return Fraction(text.strip())


def format_rational(x) -> str:
    """Serialize as ``"p/q"``; integers render with denominator 1 ("5/1")."""
    x = as_rational(x)
    return f"{x.numerator}/{x.denominator}"


def pochhammer(x, d: int) -> Fraction:
    """Rising factorial x(x+1)...(x+d-1); the empty product (d = 0) is 1."""
    if d < 0:
        raise ValueError("pochhammer requires d >= 0")
    x = as_rational(x)
    out = Fraction(1)
    for i in range(d):
        out *= x + i
    return out


def binomial_general(x, k: int) -> Fraction:
    """Generalized binomial x(x-1)...(x-k+1)/k!, with value 0 for k < 0."""
    if k < 0:
        return Fraction(0)
    x = as_rational(x)
    num = Fraction(1)
    for i in range(k):
        num *= x - i
    return num / factorial(k)


def rational_sqrt(x) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    x = as_rational(x)
    if x < 0:
        raise ValueError("rational_sqrt requires x >= 0")
    rn, rd = isqrt(x.numerator), isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


def _coerce(x) -> "ComplexRational | None":
    if isinstance(x, ComplexRational):
        return x
    if isinstance(x, (int, Fraction)):
        return ComplexRational(Fraction(x), Fraction(0))
    return None


@dataclass(frozen=True)
class ComplexRational:
    """Gaussian rational a + bi with exact Fraction parts."""

    re: Fraction
    im: Fraction

    @staticmethod
    def from_rational(x) -> "ComplexRational":
        return ComplexRational(as_rational(x), Fraction(0))

    def conjugate(self) -> "ComplexRational":
        return ComplexRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return ComplexRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return ComplexRational(-self.re, -self.im)

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return ComplexRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return ComplexRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        d = other.abs2()
        if d == 0:
            raise ZeroDivisionError("division by zero ComplexRational")
        return ComplexRational(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (ComplexRational.from_rational(1) / self) ** (-k)
        out = ComplexRational.from_rational(1)
        base = self
        e = k
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"ComplexRational({self.re!s}, {self.im!s})"


CPLX_ZERO = ComplexRational(Fraction(0), Fraction(0))
CPLX_ONE = ComplexRational(Fraction(1), Fraction(0))
