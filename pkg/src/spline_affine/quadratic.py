"""Exact arithmetic in the ring Q[sqrt 2]."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from typing import Union

Rational = Union[int, Fraction]


def _frac(x: Rational) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


@total_ordering
class QuadraticNumber:
    """The number ``a + b*sqrt(2)`` with rational ``a`` and ``b``."""

    __slots__ = ("_a", "_b")

    def __init__(self, a: Rational = 0, b: Rational = 0) -> None:
        self._a = _frac(a)
        self._b = _frac(b)

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    @classmethod
    def sqrt2_power(cls, e: int) -> QuadraticNumber:
        """Return ``2**(e/2)`` exactly."""
        if e % 2 == 0:
            return cls(Fraction(2) ** (e // 2), 0)
        return cls(0, Fraction(2) ** ((e - 1) // 2))

    def is_rational(self) -> bool:
        return self._b == 0

    def conjugate(self) -> QuadraticNumber:
        return QuadraticNumber(self._a, -self._b)

    def norm(self) -> Fraction:
        """Field norm ``a**2 - 2*b**2``."""
        return self._a * self._a - 2 * self._b * self._b

    def sign(self) -> int:
        a, b = self._a, self._b
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs; a**2 == 2*b**2 is impossible for nonzero rationals
        return sa if a * a > 2 * b * b else sb

    def __float__(self) -> float:
        return self.to_float()

    def to_float(self) -> float:
        """Round to float with relative error below ``2**-50``.

        When ``a`` and ``b*sqrt(2)`` have opposite signs the value is formed as
        ``norm / (a - b*sqrt(2))`` so no cancellation occurs.
        """
        a, b = self._a, self._b
        if b == 0:
            return float(a)
        if a == 0 or (a > 0) == (b > 0):
            return float(a) + float(b) * math.sqrt(2.0)
        return float(self.norm()) / (float(a) - float(b) * math.sqrt(2.0))

    def _coerce(self, other: object) -> QuadraticNumber | None:
        if isinstance(other, QuadraticNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticNumber(other, 0)
        return None

    def __add__(self, other: object) -> QuadraticNumber:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticNumber(self._a + o._a, self._b + o._b)

    __radd__ = __add__

    def __neg__(self) -> QuadraticNumber:
        return QuadraticNumber(-self._a, -self._b)

    def __sub__(self, other: object) -> QuadraticNumber:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticNumber(self._a - o._a, self._b - o._b)

    def __rsub__(self, other: object) -> QuadraticNumber:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: object) -> QuadraticNumber:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self._a, self._b, o._a, o._b
        return QuadraticNumber(a * c + 2 * b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> QuadraticNumber:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q[sqrt2]")
        q = self * o.conjugate()
        return QuadraticNumber(q._a / n, q._b / n)

    def __rtruediv__(self, other: object) -> QuadraticNumber:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __abs__(self) -> QuadraticNumber:
        return -self if self.sign() < 0 else self

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._a == o._a and self._b == o._b

    def __lt__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __hash__(self) -> int:
        if self._b == 0:
            return hash(self._a)
        return hash((self._a, self._b))

    def __bool__(self) -> bool:
        return self._a != 0 or self._b != 0

    def __repr__(self) -> str:
        return f"QuadraticNumber({self._a}, {self._b})"

    def __str__(self) -> str:
        """Render as ``a+b*sqrt2``."""
        sep = "-" if self._b < 0 else "+"
        return f"{self._a}{sep}{abs(self._b)}*sqrt2"
