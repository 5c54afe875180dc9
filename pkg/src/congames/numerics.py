"""Exact scalar arithmetic: rationals and real quadratic extensions Q(sqrt(d)).

Rationals are plain :class:`fractions.Fraction` (arbitrary precision,
always in lowest terms with positive denominator).  :class:`QuadExt`
represents ``a + b*sqrt(d)`` with rational ``a``, ``b`` and a fixed
square-free integer ``d >= 2``.  Every comparison goes through an exact
sign computation, so there are no floating-point ties anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Union

Rational = Fraction
Scalar = Union[Fraction, "QuadExt"]


class MixedRadicalError(ValueError):
    """Arithmetic between two different irrational radicals is not defined here."""


def is_square_free(n: int) -> bool:
    if n < 1:
        return False
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


def rational(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot build an exact rational from {type(value).__name__}")


def format_rational(x: Fraction) -> str:
    """Textual form "p/q", or just "p" when the denominator is 1."""
    return str(x)


def _sign_fraction(x: Fraction) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class QuadExt:
    """The real number ``a + b*sqrt(d)``, exactly.

    ``d`` must be a positive square-free integer.  ``d == 1`` collapses to
    the rational ``a + b``.  Mixing two values with different irrational
    parts (both ``b != 0`` and different ``d``) raises
    :class:`MixedRadicalError`; rationals (``b == 0``) combine with any
    radical.
    """

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "a", rational(self.a))
        object.__setattr__(self, "b", rational(self.b))
        if self.d < 1 or not is_square_free(self.d):
            raise ValueError(f"d must be a positive square-free integer, got {self.d}")
        if self.d == 1:
            object.__setattr__(self, "a", self.a + self.b)
            object.__setattr__(self, "b", Fraction(0))

    @classmethod
    def from_scalar(cls, value, d: int = 2) -> "QuadExt":
        if isinstance(value, QuadExt):
            return value
        return cls(rational(value), Fraction(0), d)

    def _lift(self, other) -> "QuadExt":
        if isinstance(other, QuadExt):
            if other.d == self.d or other.b == 0 or self.b == 0:
                return other
            raise MixedRadicalError(f"cannot mix sqrt({self.d}) with sqrt({other.d})")
        if isinstance(other, (int, Fraction)):
            return QuadExt(rational(other), Fraction(0), self.d)
        return NotImplemented

    def _common_d(self, other: "QuadExt") -> int:
        return self.d if self.b != 0 else other.d

    # -- ring operations ---------------------------------------------------

    def __add__(self, other) -> "QuadExt":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return QuadExt(self.a + other.a, self.b + other.b, self._common_d(other))

    __radd__ = __add__

    def __neg__(self) -> "QuadExt":
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other) -> "QuadExt":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "QuadExt":
        return (-self) + other

    def __mul__(self, other) -> "QuadExt":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        d = self._common_d(other)
        return QuadExt(
            self.a * other.a + self.b * other.b * d,
            self.a * other.b + self.b * other.a,
            d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt":
        norm = self.a * self.a - self.b * self.b * self.d
        if norm == 0:
            # square-free d makes a^2 == b^2 d possible only at a == b == 0
            raise ZeroDivisionError("division by zero QuadExt")
        return QuadExt(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other) -> "QuadExt":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if other.b == 0 and self.b != 0:
            other = QuadExt(other.a, Fraction(0), self.d)
        return self * other.inverse()

    def __rtruediv__(self, other) -> "QuadExt":
        lifted = self._lift(other)
        if lifted is NotImplemented:
            return NotImplemented
        return lifted * self.inverse()

    def __pow__(self, n: int) -> "QuadExt":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadExt(Fraction(1), Fraction(0), self.d)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- exact comparisons -------------------------------------------------

    def sign(self) -> int:
        sa, sb = _sign_fraction(self.a), _sign_fraction(self.b)
        if sb == 0:
            return sa
        if sa == 0:
            return sb
        if sa == sb:
            return sa
        # opposite signs: decided by comparing a^2 against b^2 d
        gap = self.a * self.a - self.b * self.b * self.d
        if gap == 0:
            return 0
        return sa if gap > 0 else sb

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadExt):
            if other.b == 0 or self.b == 0 or other.d == self.d:
                return self.a == other.a and self.b == other.b
            return False
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def _cmp(self, other) -> int:
        diff = self - other
        if diff is NotImplemented:
            raise TypeError(f"cannot compare QuadExt with {type(other).__name__}")
        return diff.sign()

    def __lt__(self, other) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other) -> bool:
        return self._cmp(other) >= 0

    # -- presentation --------------------------------------------------------

    def __str__(self) -> str:
        if self.b == 0:
            return format_rational(self.a)
        root = f"√{self.d}"
        if self.b == 1:
            tail = root
        elif self.b == -1:
            tail = f"-{root}"
        else:
            tail = f"{format_rational(self.b)}{root}"
        if self.a == 0:
            return tail
        joiner = "+" if self.b > 0 else ""
        return f"{format_rational(self.a)}{joiner}{tail}"

    def __repr__(self) -> str:
        return f"QuadExt({self.a!r}, {self.b!r}, {self.d})"


SQRT2 = QuadExt(Fraction(0), Fraction(1), 2)
SQRT3 = QuadExt(Fraction(0), Fraction(1), 3)


def qsign(x: Scalar) -> int:
    """Exact sign (-1, 0, +1) of a rational or quadratic-extension value."""
    if isinstance(x, QuadExt):
        return x.sign()
    if isinstance(x, (int, Fraction)):
        return _sign_fraction(Fraction(x))
    raise TypeError(f"qsign expects an exact scalar, got {type(x).__name__}")


def _floor_radical_multiple(q: int, d: int) -> int:
    """floor(q * sqrt(d)) for integer q (any sign), exact."""
    if q >= 0:
        return isqrt(q * q * d)
    root = isqrt(q * q * d)
    # -q*sqrt(d) is irrational unless q == 0, so the floor shifts by one
    return -root - (0 if root * root == q * q * d else 1)


def qeval(x: Scalar, precision: int = 64) -> str:
    """Decimal rendering of ``x`` accurate to ``precision`` bits.

    Reporting only: comparisons must go through :func:`qsign`.
    """
    if precision < 8:
        raise ValueError("precision must be at least 8 bits")
    if isinstance(x, (int, Fraction)):
        x = QuadExt(rational(x), Fraction(0), 2)
    digits = precision * 30103 // 100000 + 1  # ceil(precision * log10(2)) + slack
    guard = 3
    neg = x.sign() < 0
    if neg:
        x = -x
    scale = 10 ** (digits + guard)
    den_a, den_b = x.a.denominator, x.b.denominator
    den = den_a * den_b // gcd(den_a, den_b)
    big_a = x.a.numerator * (den // den_a) * scale
    big_b = x.b.numerator * (den // den_b) * scale
    # floor((big_a + big_b*sqrt(d)) / den), then round away the guard digits
    n = (big_a + _floor_radical_multiple(big_b, x.d)) // den
    n = (n + 5 * 10 ** (guard - 1)) // 10 ** guard
    unit = 10 ** digits
    head, tail = divmod(n, unit)
    body = f"{head}.{tail:0{digits}d}"
    return "-" + body if neg else body
