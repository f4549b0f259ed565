"""Exact 1-periodic piecewise polynomials on dyadic partitions of [0, 1).

A :class:`PiecewisePoly` of level ``j`` has ``2**j`` pieces; piece ``i`` lives
on ``[i/2**j, (i+1)/2**j)`` and stores the monomial coefficients of its
polynomial in the *global* variable ``t``.  With global coordinates, refining
a partition is a pure repetition of rows, which keeps most operations cheap.

Coefficients are held as a numpy object array of Python ints together with a
single positive common denominator, reduced so that the gcd of all entries and
the denominator is 1.  This makes the representation canonical for a given
level, so equality is a plain comparison after aligning levels.

Point values follow the right-continuity convention: at a breakpoint the value
is that of the piece starting there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

import numpy as np

from .quadratic import QuadraticNumber

Rational = Union[int, Fraction]

__all__ = [
    "PiecewisePoly",
    "ScaledPoly",
    "evaluate",
    "left_limit",
    "linear_combine",
    "multiply",
    "volterra",
    "derivative",
    "inner_product",
    "norm_sq",
    "mean",
    "refine",
    "dilate",
    "squeeze",
    "zoom",
    "half_shift",
    "knot_jumps",
    "is_smooth",
    "scaled_inner_product",
]


def as_fraction(x: object) -> Fraction:
    """Convert an exact scalar (int, Fraction or string like ``"3/8"``)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=object)


@lru_cache(maxsize=None)
def _compose_matrix(degree: int, a: int, b: int) -> np.ndarray:
    """M[e, i] = coefficient of t**i in (a*t + b)**e, for integer a, b."""
    m = _zeros(degree + 1, degree + 1)
    for e in range(degree + 1):
        for i in range(e + 1):
            m[e, i] = math.comb(e, i) * a**i * b ** (e - i)
    m.flags.writeable = False
    return m


def _expand(num: np.ndarray, level: int, target: int) -> np.ndarray:
    if target == level:
        return num
    return np.repeat(num, 1 << (target - level), axis=0)


def _convolve_rows(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    out = _zeros(p.shape[0], p.shape[1] + q.shape[1] - 1)
    for a in range(p.shape[1]):
        pa = p[:, a]
        for b in range(q.shape[1]):
            out[:, a + b] += pa * q[:, b]
    return out


def _integrate_rows(num: np.ndarray, level: int, first: int = 0) -> Fraction:
    """Sum over rows of the integral of each row's polynomial over its piece.

    Row ``r`` of ``num`` is taken to be piece ``first + r`` at ``level``.
    """
    n = num.shape[0]
    x = np.arange(first, first + n + 1, dtype=object)
    total = Fraction(0)
    pw = np.ones(n + 1, dtype=object)
    for e in range(num.shape[1]):
        pw = pw * x
        col = num[:, e]
        s = np.dot(col, pw[1:] - pw[:-1])
        if s:
            total += Fraction(s, (e + 1) << (level * (e + 1)))
    return total


class PiecewisePoly:
    """Immutable exact piecewise polynomial, 1-periodic, dyadic breakpoints."""

    __slots__ = ("_level", "_num", "_den", "_span", "_key")

    def __init__(self, level: int, num: np.ndarray, den: int = 1) -> None:
        if level < 0:
            raise ValueError("level must be non-negative")
        num = np.array(num, dtype=object)
        if num.ndim != 2 or num.shape[0] != 1 << level or num.shape[1] < 1:
            raise ValueError(f"expected {1 << level} pieces, got shape {num.shape}")
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = -num, -den
        cols = num.shape[1]
        while cols > 1 and not any(num[:, cols - 1]):
            cols -= 1
        num = num[:, :cols].copy()
        nz = [v for v in num.flat if v]
        if not nz:
            den = 1
        elif den != 1:
            g = math.gcd(den, *nz)
            if g != 1:
                num = num // g
                den //= g
        num.flags.writeable = False
        self._level = level
        self._num = num
        self._den = den
        self._span: tuple[int, int] | None = None
        self._key: tuple | None = None

    # -- construction -----------------------------------------------------

    @classmethod
    def from_coeffs(cls, level: int, coeffs: Sequence[Sequence[object]]) -> PiecewisePoly:
        """Build from per-piece monomial coefficients (lowest degree first)."""
        if len(coeffs) != 1 << level:
            raise ValueError(f"level {level} needs {1 << level} pieces, got {len(coeffs)}")
        rows = [[as_fraction(c) for c in row] or [Fraction(0)] for row in coeffs]
        cols = max(len(r) for r in rows)
        den = math.lcm(*(c.denominator for r in rows for c in r))
        num = _zeros(len(rows), cols)
        for i, r in enumerate(rows):
            for e, c in enumerate(r):
                num[i, e] = c.numerator * (den // c.denominator)
        return cls(level, num, den)

    @classmethod
    def constant(cls, c: object = 1, level: int = 0) -> PiecewisePoly:
        return cls.from_coeffs(level, [[c]] * (1 << level))

    @classmethod
    def zero(cls, level: int = 0) -> PiecewisePoly:
        return cls(level, _zeros(1 << level, 1))

    # -- accessors --------------------------------------------------------

    @property
    def level(self) -> int:
        return self._level

    @property
    def degree(self) -> int:
        return self._num.shape[1] - 1

    @property
    def num_pieces(self) -> int:
        return self._num.shape[0]

    @property
    def coeffs(self) -> tuple[tuple[Fraction, ...], ...]:
        d = self._den
        return tuple(tuple(Fraction(v, d) for v in row) for row in self._num)

    def piece(self, i: int) -> tuple[Fraction, ...]:
        d = self._den
        return tuple(Fraction(v, d) for v in self._num[i])

    def is_zero(self) -> bool:
        return not any(self._num.flat)

    def nonzero_span(self) -> tuple[int, int]:
        """Half-open range ``[lo, hi)`` of piece indices outside which p is 0."""
        if self._span is None:
            nz = np.flatnonzero(np.array([any(row) for row in self._num], dtype=bool))
            self._span = (0, 0) if nz.size == 0 else (int(nz[0]), int(nz[-1]) + 1)
        return self._span

    def support(self) -> tuple[Fraction, Fraction]:
        """Smallest dyadic hull ``[lo, hi]`` containing the support."""
        lo, hi = self.nonzero_span()
        return Fraction(lo, 1 << self._level), Fraction(hi, 1 << self._level)

    def _span_at(self, level: int) -> tuple[int, int]:
        lo, hi = self.nonzero_span()
        s = level - self._level
        return lo << s, hi << s

    # -- dunder -----------------------------------------------------------

    def __call__(self, t: object) -> Fraction:
        return evaluate(self, t)

    def __add__(self, other: object) -> PiecewisePoly:
        if not isinstance(other, PiecewisePoly):
            return NotImplemented
        return linear_combine([(1, self), (1, other)])

    def __sub__(self, other: object) -> PiecewisePoly:
        if not isinstance(other, PiecewisePoly):
            return NotImplemented
        return linear_combine([(1, self), (-1, other)])

    def __neg__(self) -> PiecewisePoly:
        return PiecewisePoly(self._level, -self._num, self._den)

    def __mul__(self, other: object) -> PiecewisePoly:
        if isinstance(other, PiecewisePoly):
            return multiply(self, other)
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return PiecewisePoly(self._level, self._num * c.numerator, self._den * c.denominator)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PiecewisePoly):
            return NotImplemented
        if self._den != other._den or self.degree != other.degree:
            return False
        level = max(self._level, other._level)
        a = _expand(self._num, self._level, level)
        b = _expand(other._num, other._level, level)
        return bool(np.array_equal(a, b))

    def _canonical_key(self) -> tuple:
        if self._key is None:
            rows, level = self._num, self._level
            while level > 0 and np.array_equal(rows[0::2], rows[1::2]):
                rows, level = rows[0::2], level - 1
            self._key = (level, self._den, tuple(tuple(r) for r in rows))
        return self._key

    def __hash__(self) -> int:
        return hash(self._canonical_key())

    def __repr__(self) -> str:
        return f"PiecewisePoly(level={self._level}, degree={self.degree})"

    def coarsen(self) -> PiecewisePoly:
        """Same function at the lowest level that represents it."""
        level, _, rows = self._canonical_key()
        return PiecewisePoly(level, np.array(rows, dtype=object).reshape(1 << level, -1), self._den)

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "level": self._level,
            "degree": self.degree,
            "pieces": [
                [[str(c.numerator), str(c.denominator)] for c in row] for row in self.coeffs
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> PiecewisePoly:
        pieces = [[Fraction(int(n), int(d)) for n, d in row] for row in data["pieces"]]
        p = cls.from_coeffs(int(data["level"]), pieces)
        if p.degree > int(data["degree"]):
            raise ValueError("declared degree is smaller than the data")
        return p


# -- pointwise queries ------------------------------------------------------


def _horner(row: Sequence[int], t: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(row):
        acc = acc * t + c
    return acc


def evaluate(p: PiecewisePoly, t: object) -> Fraction:
    """Exact value at ``t`` (reduced mod 1, right-continuous at breakpoints)."""
    x = as_fraction(t) % 1
    return _horner(p._num[math.floor(x * (1 << p.level))], x) / p._den


def left_limit(p: PiecewisePoly, t: object) -> Fraction:
    """Limit of ``p(s)`` as ``s`` increases to ``t``."""
    x = as_fraction(t) % 1
    n = 1 << p.level
    if x == 0:
        return _horner(p._num[n - 1], Fraction(1)) / p._den
    return _horner(p._num[math.ceil(x * n) - 1], x) / p._den


# -- algebra ----------------------------------------------------------------


def linear_combine(terms: Iterable[tuple[object, PiecewisePoly]]) -> PiecewisePoly:
    """Exact ``sum(c * p)`` at the common refinement level."""
    terms = [(as_fraction(c), p) for c, p in terms]
    if not terms:
        return PiecewisePoly.zero()
    level = max(p.level for _, p in terms)
    cols = max(p.degree for _, p in terms) + 1
    den = math.lcm(*(c.denominator * p._den for c, p in terms))
    out = _zeros(1 << level, cols)
    for c, p in terms:
        factor = c.numerator * (den // (c.denominator * p._den))
        if factor:
            out[:, : p.degree + 1] += _expand(p._num, p.level, level) * factor
    return PiecewisePoly(level, out, den)


def multiply(p: PiecewisePoly, q: PiecewisePoly) -> PiecewisePoly:
    """Pointwise product."""
    level = max(p.level, q.level)
    prod = _convolve_rows(_expand(p._num, p.level, level), _expand(q._num, q.level, level))
    return PiecewisePoly(level, prod, p._den * q._den)


def refine(p: PiecewisePoly, level: int) -> PiecewisePoly:
    """The same function with breakpoints at multiples of ``2**-level``."""
    if level < p.level:
        raise ValueError("coarsening unsupported")
    return PiecewisePoly(level, _expand(p._num, p.level, level), p._den)


# -- calculus ---------------------------------------------------------------


def derivative(p: PiecewisePoly) -> PiecewisePoly:
    """Piecewise derivative on the open pieces."""
    if p.degree == 0:
        return PiecewisePoly.zero(p.level)
    out = _zeros(p.num_pieces, p.degree)
    for e in range(1, p.degree + 1):
        out[:, e - 1] = p._num[:, e] * e
    return PiecewisePoly(p.level, out, p._den)


def volterra(p: PiecewisePoly) -> PiecewisePoly:
    """Continuous antiderivative on [0, 1] vanishing at 0.

    The result is the 1-periodic extension of that antiderivative; it is
    continuous across ``t = 1`` only when ``mean(p) == 0``.
    """
    level, d = p.level, p.degree
    n = 1 << level
    lcm = math.lcm(*range(1, d + 2))
    scale = 1 << (level * (d + 1))
    a = _zeros(n, d + 2)
    for e in range(d + 1):
        a[:, e + 1] = p._num[:, e] * (lcm // (e + 1) * scale)
    # a[i, e] is divisible by 2**(level*e), so values at i/2**level stay integral
    shifts = [1 << (level * e) for e in range(d + 2)]

    def at(row: int, x: int) -> int:
        return sum(a[row, e] * x**e // shifts[e] for e in range(1, d + 2))

    const = [0] * n
    for i in range(1, n):
        const[i] = const[i - 1] + at(i - 1, i) - at(i, i)
    a[:, 0] = const
    return PiecewisePoly(level, a, p._den * lcm * scale)


def integral(p: PiecewisePoly) -> Fraction:
    """Exact integral over one period."""
    lo, hi = p.nonzero_span()
    if lo == hi:
        return Fraction(0)
    return _integrate_rows(p._num[lo:hi], p.level, lo) / p._den


mean = integral


def inner_product(p: PiecewisePoly, q: PiecewisePoly) -> Fraction:
    """Exact L2(0, 1) inner product."""
    level = max(p.level, q.level)
    lo_p, hi_p = p._span_at(level)
    lo_q, hi_q = q._span_at(level)
    lo, hi = max(lo_p, lo_q), min(hi_p, hi_q)
    if lo >= hi:
        return Fraction(0)
    rows = np.arange(lo, hi)
    a = p._num[rows >> (level - p.level)]
    b = q._num[rows >> (level - q.level)]
    return _integrate_rows(_convolve_rows(a, b), level, lo) / (p._den * q._den)


def norm_sq(p: PiecewisePoly) -> Fraction:
    return inner_product(p, p)


# -- dyadic changes of variable ------------------------------------------------


def dilate(p: PiecewisePoly, k: int) -> PiecewisePoly:
    """The 1-periodic function ``t -> p(2**k * t)``."""
    if k == 0:
        return p
    n = p.num_pieces
    out = _zeros(n << k, p.degree + 1)
    for s in range(1 << k):
        out[s * n : (s + 1) * n] = p._num.dot(_compose_matrix(p.degree, 1 << k, -s))
    return PiecewisePoly(p.level + k, out, p._den)


def squeeze(p: PiecewisePoly, k: int, j: int) -> PiecewisePoly:
    """``t -> p(2**k * t - j)`` on ``[j/2**k, (j+1)/2**k)`` and 0 elsewhere in [0, 1)."""
    if not 0 <= j < 1 << k:
        raise ValueError(f"translation {j} out of range for scale {k}")
    n = p.num_pieces
    out = _zeros(n << k, p.degree + 1)
    out[j * n : (j + 1) * n] = p._num.dot(_compose_matrix(p.degree, 1 << k, -j))
    return PiecewisePoly(p.level + k, out, p._den)


def zoom(p: PiecewisePoly, d: int, q: int) -> PiecewisePoly:
    """``s -> p((s + q) / 2**d)``: the piece of p over ``[q/2**d, (q+1)/2**d)`` blown up to [0, 1)."""
    if not 0 <= q < 1 << d:
        raise ValueError(f"offset {q} out of range for depth {d}")
    deg = p.degree
    if d <= p.level:
        level = p.level - d
        rows = p._num[q << level : (q + 1) << level]
    else:
        level = 0
        rows = p._num[[q >> (d - p.level)]]
    # P((s+q)/2**d) = 2**(-d*deg) * sum_e c_e 2**(d*(deg-e)) (s+q)**e
    scaled = rows * np.array([1 << (d * (deg - e)) for e in range(deg + 1)], dtype=object)
    out = scaled.dot(_compose_matrix(deg, 1, q))
    return PiecewisePoly(level, out, p._den << (d * deg))


def half_shift(p: PiecewisePoly) -> PiecewisePoly:
    """``t -> p(t + 1/2)``."""
    if p.level == 0:
        p = refine(p, 1)
    n = p.num_pieces
    h = n // 2
    deg = p.degree
    # P(t + c/2) = 2**-deg * sum_e c_e 2**(deg-e) (2t + c)**e
    weights = np.array([1 << (deg - e) for e in range(deg + 1)], dtype=object)
    out = _zeros(n, deg + 1)
    out[:h] = (p._num[h:] * weights).dot(_compose_matrix(deg, 2, 1))
    out[h:] = (p._num[:h] * weights).dot(_compose_matrix(deg, 2, -1))
    return PiecewisePoly(p.level, out, p._den << deg)


def knot_jumps(p: PiecewisePoly) -> list[Fraction]:
    """Jump ``p(x+) - p(x-)`` at each breakpoint ``x = i/2**level`` (periodic)."""
    n = p.num_pieces
    jumps = []
    for i in range(n):
        x = Fraction(i, n)
        left_row = p._num[i - 1]
        left_x = x if i > 0 else Fraction(1)
        jumps.append((_horner(p._num[i], x) - _horner(left_row, left_x)) / p._den)
    return jumps


def is_smooth(p: PiecewisePoly, order: int) -> bool:
    """True if p and its derivatives up to ``order`` are continuous (periodically)."""
    q = p
    for _ in range(order + 1):
        if any(knot_jumps(q)):
            return False
        q = derivative(q)
    return True


# -- functions carrying a power of sqrt 2 --------------------------------------


@dataclass(frozen=True)
class ScaledPoly:
    """The function ``2**(sqrt2_exponent/2) * poly``."""

    poly: PiecewisePoly
    sqrt2_exponent: int = 0

    @property
    def factor(self) -> QuadraticNumber:
        return QuadraticNumber.sqrt2_power(self.sqrt2_exponent)

    def __call__(self, t: object) -> QuadraticNumber:
        return self.factor * evaluate(self.poly, t)

    def inner(self, other: ScaledPoly | PiecewisePoly) -> QuadraticNumber:
        return scaled_inner_product(self, other)

    def norm_sq(self) -> QuadraticNumber:
        return scaled_inner_product(self, self)

    def rational_multiple(self) -> PiecewisePoly:
        """``2**(k/2)`` times this function, i.e. ``2**k * poly`` (rational data)."""
        return self.poly * (1 << self.sqrt2_exponent)


def scaled_inner_product(f: ScaledPoly | PiecewisePoly, g: ScaledPoly | PiecewisePoly) -> QuadraticNumber:
    """Inner product of two scaled functions, exact in Q[sqrt 2]."""
    if isinstance(f, PiecewisePoly):
        f = ScaledPoly(f)
    if isinstance(g, PiecewisePoly):
        g = ScaledPoly(g)
    ip = inner_product(f.poly, g.poly)
    if not ip:
        return QuadraticNumber(0)
    return QuadraticNumber.sqrt2_power(f.sqrt2_exponent + g.sqrt2_exponent) * ip
