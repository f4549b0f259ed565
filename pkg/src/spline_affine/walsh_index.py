"""Binary multi-indices, their two enumerations, and the dyadic step systems.

Two enumerations of the word set are in use and every public function says
which one it speaks:

* Paley (Walsh functions): ``n = sum(alpha[v] * 2**v) + 2**k``, first letter
  least significant.
* natural (Haar functions): ``n = int(alpha as a binary string) + 2**k``,
  first letter most significant.

Both map the empty word to 1.  Index 0 (the constant function) lies outside
the word set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .dyadic_poly import PiecewisePoly, ScaledPoly, inner_product, refine
from .quadratic import QuadraticNumber


class MultiIndex(tuple):
    """A finite word over {0, 1}; concatenation is ``+``."""

    __slots__ = ()

    def __new__(cls, bits: Iterable[int] = ()) -> MultiIndex:
        bits = tuple(int(b) for b in bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError(f"multi-index letters must be 0 or 1: {bits}")
        return super().__new__(cls, bits)

    @classmethod
    def parse(cls, s: str) -> MultiIndex:
        """Parse a bit string such as ``"101"``; ``""`` is the empty word."""
        return cls(int(c) for c in s.strip())

    def __add__(self, other: Sequence[int]) -> MultiIndex:
        return MultiIndex(tuple(self) + tuple(other))

    def ones(self) -> int:
        return sum(self)

    def __str__(self) -> str:
        return "".join(map(str, self))

    def __repr__(self) -> str:
        return f"MultiIndex({str(self)!r})"


def concat(alpha: Sequence[int], beta: Sequence[int]) -> MultiIndex:
    return MultiIndex(alpha) + beta


def is_proper_suffix(beta: Sequence[int], beta2: Sequence[int]) -> bool:
    """True iff ``beta2 == alpha + beta`` for some nonempty word alpha."""
    beta, beta2 = tuple(beta), tuple(beta2)
    k = len(beta)
    return len(beta2) > k and beta2[len(beta2) - k :] == beta


def words(k: int) -> Iterator[MultiIndex]:
    """All words of length k, in Paley order."""
    for j in range(1 << k):
        yield MultiIndex((j >> v) & 1 for v in range(k))


def paley_index(alpha: Sequence[int]) -> int:
    k = len(alpha)
    return sum(b << v for v, b in enumerate(alpha)) + (1 << k)


def paley_multiindex(n: int) -> MultiIndex:
    if n < 1:
        raise ValueError("w_0 excluded")
    k = n.bit_length() - 1
    return MultiIndex((n >> v) & 1 for v in range(k))


def natural_index(alpha: Sequence[int]) -> int:
    k = len(alpha)
    j = 0
    for b in alpha:
        j = 2 * j + b
    return j + (1 << k)


def natural_multiindex(n: int) -> MultiIndex:
    if n < 1:
        raise ValueError("chi_0 excluded")
    k = n.bit_length() - 1
    return MultiIndex((n >> (k - 1 - v)) & 1 for v in range(k))


def scale_and_shift(n: int) -> tuple[int, int]:
    """Split ``n = 2**k + j`` with ``0 <= j < 2**k``."""
    if n < 1:
        raise ValueError(f"index must be positive, got {n}")
    k = n.bit_length() - 1
    return k, n - (1 << k)


def chaos_order(n: int) -> int:
    """Number of Rademacher factors of the Paley-ordered Walsh function w_n."""
    if n < 1:
        raise ValueError("chaos order is defined for n >= 1")
    return bin(n).count("1")


# -- step functions ---------------------------------------------------------


def _signs_to_poly(level: int, signs: np.ndarray) -> PiecewisePoly:
    return PiecewisePoly(level, np.array(signs.tolist(), dtype=object).reshape(-1, 1))


def rademacher(k: int, level: int | None = None) -> PiecewisePoly:
    """``r_k(t) = r(2**k t)`` with ``r = +1`` on [0, 1/2) and ``-1`` on [1/2, 1)."""
    if level is None:
        level = k + 1
    if level < k + 1:
        raise ValueError("insufficient resolution")
    i = np.arange(1 << level)
    return _signs_to_poly(level, 1 - 2 * ((i >> (level - 1 - k)) & 1))


def walsh_fn(n: int, level: int | None = None) -> PiecewisePoly:
    """Walsh function w_n in Paley order: the product of r_v over the bits v of n.

    ``n = 0`` gives the constant 1.
    """
    if n < 0:
        raise ValueError("Walsh index must be non-negative")
    k = max(n.bit_length() - 1, 0)
    need = n.bit_length()
    if level is None:
        level = need
    if level < need:
        raise ValueError("insufficient resolution")
    i = np.arange(1 << level)
    parity = np.zeros(1 << level, dtype=np.int64)
    for v in range(k + 1):
        if (n >> v) & 1:
            parity ^= (i >> (level - 1 - v)) & 1
    return _signs_to_poly(level, 1 - 2 * parity)


def haar_fn(n: int) -> ScaledPoly:
    """Haar function chi_n in natural order, as ``2**(k/2)`` times a step function.

    ``n = 0`` gives the constant 1.
    """
    if n < 0:
        raise ValueError("Haar index must be non-negative")
    if n == 0:
        return ScaledPoly(PiecewisePoly.constant(1), 0)
    k, j = scale_and_shift(n)
    signs = np.zeros(1 << (k + 1), dtype=np.int64)
    signs[2 * j] = 1
    signs[2 * j + 1] = -1
    return ScaledPoly(_signs_to_poly(k + 1, signs), k)


# -- exact Walsh transform --------------------------------------------------


def _cell_integrals(f: PiecewisePoly, level: int) -> tuple[list[int], int]:
    """Integrals of f over the ``2**level`` cells, as integers over one denominator."""
    g = refine(f, level)
    deg = g.degree
    lcm = math.lcm(*range(1, deg + 2))
    x = np.arange((1 << level) + 1, dtype=object)
    acc = np.zeros(1 << level, dtype=object)
    pw = np.ones_like(x)
    for e in range(deg + 1):
        pw = pw * x
        weight = (lcm // (e + 1)) << (level * (deg - e))
        acc += g._num[:, e] * (pw[1:] - pw[:-1]) * weight
    den = g._den * lcm << (level * (deg + 1))
    return list(acc), den


def _hadamard(values: list[int]) -> list[int]:
    a = np.array(values, dtype=object)
    h = 1
    n = len(a)
    while h < n:
        a = a.reshape(-1, 2, h)
        a = np.stack([a[:, 0] + a[:, 1], a[:, 0] - a[:, 1]], axis=1).reshape(n)
        h *= 2
    return list(a)


def walsh_coefficients(f: PiecewisePoly, max_index: int) -> list[Fraction]:
    """All ``(f, w_n)`` for ``0 <= n <= max_index``, exactly (list index = n)."""
    level = max(max_index.bit_length(), f.level)
    cells, den = _cell_integrals(f, level)
    n = 1 << level
    # w_n(cell x) = (-1)**popcount(n & reverse(x)), so permute cells by bit reversal
    rev = [int(format(y, f"0{level}b")[::-1], 2) if level else 0 for y in range(n)]
    spectrum = _hadamard([cells[rev[y]] for y in range(n)])
    return [Fraction(spectrum[i], den) for i in range(max_index + 1)]


# -- the Walsh matrix -------------------------------------------------------


@dataclass(frozen=True)
class WalshMatrixLevel:
    """Level-k block relating Haar and Walsh functions.

    ``signs[i, j]`` is the sign of ``(w_{2^k+i}, chi_{2^k+j})``; the orthogonal
    matrix is ``signs * 2**(-k/2)``, so that
    ``w_{2^k+i} = sum_j eps[i, j] chi_{2^k+j}`` and
    ``chi_{2^k+j} = sum_i eps[i, j] w_{2^k+i}``.
    """

    k: int
    signs: np.ndarray

    @property
    def scale_exponent(self) -> int:
        return self.k

    def is_unitary(self) -> bool:
        s = self.signs.astype(object)
        return bool(np.array_equal(s.T.dot(s), np.eye(1 << self.k, dtype=np.int64) * (1 << self.k)))

    def sign(self, alpha: Sequence[int], beta: Sequence[int]) -> int:
        """Sign of the coefficient of ``W^beta r`` in ``S^alpha r`` (|alpha| = |beta| = k)."""
        if len(alpha) != self.k or len(beta) != self.k:
            raise ValueError("word lengths must equal the matrix level")
        i = paley_index(beta) - (1 << self.k)
        j = natural_index(alpha) - (1 << self.k)
        return int(self.signs[i, j])

    def haar_to_walsh(self, haar_coeffs: Sequence[QuadraticNumber]) -> list[QuadraticNumber]:
        """Map level-k Haar coefficients ``(f, chi)`` to Walsh coefficients ``(f, w)``."""
        scale = QuadraticNumber.sqrt2_power(-self.k)
        h = list(haar_coeffs)
        out = []
        for row in self.signs:
            acc = QuadraticNumber(0)
            for s, c in zip(row, h):
                acc = acc + c if s > 0 else acc - c
            out.append(acc * scale)
        return out


@lru_cache(maxsize=None)
def walsh_matrix(k: int) -> WalshMatrixLevel:
    """Build the level-k sign matrix column by column.

    Column j holds ``2**(k/2) * (chi_{2^k+j}, w_{2^k+i})`` for all i, taken from
    the exact Walsh transform of the step function under chi.
    """
    if k < 0:
        raise ValueError("level must be non-negative")
    size = 1 << k
    signs = np.zeros((size, size), dtype=np.int64)
    for j in range(size):
        chi = haar_fn(size + j)
        # 2**(k/2) * 2**(k/2) * (poly, w) = 2**k * (poly, w)
        col = walsh_coefficients(chi.poly, 2 * size - 1)[size:]
        for i, c in enumerate(col):
            v = c * size
            if v not in (1, -1):
                raise ArithmeticError(f"unexpected Walsh matrix entry {v} at ({i}, {j})")
            signs[i, j] = v
    signs.flags.writeable = False
    return WalshMatrixLevel(k, signs)


def index_table(max_length: int) -> list[tuple[str, int, int, int]]:
    """Rows ``(alpha, paley_n, natural_n, chaos_order)`` for all |alpha| <= max_length."""
    rows = []
    for k in range(max_length + 1):
        for alpha in words(k):
            n = paley_index(alpha)
            rows.append((str(alpha), n, natural_index(alpha), chaos_order(n)))
    return rows


def haar_coefficient(f: PiecewisePoly, n: int) -> QuadraticNumber:
    """Exact ``(f, chi_n)`` in Q[sqrt 2]."""
    chi = haar_fn(n)
    return QuadraticNumber.sqrt2_power(chi.sqrt2_exponent) * inner_product(f, chi.poly)


def walsh_coefficient(f: PiecewisePoly, n: int) -> Fraction:
    """Exact ``(f, w_n)`` by direct integration."""
    return inner_product(f, walsh_fn(n))
