"""Finite-section certificates for the Riesz bounds of spline affine systems.

All Gram entries are exact in Q[sqrt 2]; floats appear only inside the
eigensolver.  Sections of a Riesz-basis Gram matrix have their spectrum in
``[A**2, B**2]``, so the checks here are necessary consequences of the bounds
``A = 1/10``, ``B = 19/10``, never proofs of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .affine_operators import build_spline, generator, spline_checks
from .chaos_spectrum import DEFAULT_MAX_INDEX, decompose, f1_sq_norm, gamma, verify_lemma3
from .dyadic_poly import PiecewisePoly, ScaledPoly, inner_product, mean, zoom
from .jacobi import jacobi_eigenvalues
from .quadratic import QuadraticNumber
from .walsh_index import rademacher, scale_and_shift

LAMBDA_LO = 0.01  # (1/10)**2
LAMBDA_HI = 3.61  # (19/10)**2
DEVIATION_BOUND = 0.9
TAIL_BOUND = 0.12


@dataclass(frozen=True)
class GramMatrix:
    """Symmetric matrix of exact inner products, indexed by ``n_range``."""

    n_range: tuple[int, ...]
    entries: tuple[tuple[QuadraticNumber, ...], ...]

    @property
    def size(self) -> int:
        return len(self.n_range)

    def __getitem__(self, ij: tuple[int, int]) -> QuadraticNumber:
        i, j = ij
        return self.entries[i][j]

    def is_symmetric(self) -> bool:
        n = self.size
        return all(self.entries[i][j] == self.entries[j][i] for i in range(n) for j in range(i))

    def is_identity(self) -> bool:
        return all(
            e == (1 if i == j else 0) for i, row in enumerate(self.entries) for j, e in enumerate(row)
        )

    def to_float(self) -> np.ndarray:
        return np.array([[e.to_float() for e in row] for row in self.entries], dtype=float)


def _supports_disjoint(f: ScaledPoly, g: ScaledPoly) -> bool:
    a0, a1 = f.poly.support()
    b0, b1 = g.poly.support()
    return a1 <= b0 or b1 <= a0


def gram(system: Sequence[ScaledPoly], n_range: Sequence[int] | None = None) -> GramMatrix:
    """Exact Gram matrix of an arbitrary list of scaled functions."""
    if not system:
        raise ValueError("empty system")
    size = len(system)
    zero = QuadraticNumber(0)
    rows = [[zero] * size for _ in range(size)]
    for i, f in enumerate(system):
        for j in range(i, size):
            g = system[j]
            if i != j and _supports_disjoint(f, g):
                continue
            rows[i][j] = rows[j][i] = f.inner(g)
    n_range = tuple(range(size)) if n_range is None else tuple(n_range)
    return GramMatrix(n_range, tuple(map(tuple, rows)))


def affine_gram(f: PiecewisePoly, size: int, start: int = 0) -> GramMatrix:
    """Gram matrix of the affine system ``f_n``, ``start <= n < size``.

    Uses self-similarity: for nested supports with scale gap d,
    ``(f_n, f_n') = 2**(-d/2) * integral of f((s+q)/2**d) f(s) ds`` where q is
    the offset of the inner interval, so only one exact integral per (d, q)
    is needed.
    """
    if size <= start:
        raise ValueError("empty system")

    @lru_cache(maxsize=None)
    def block(d: int, q: int) -> Fraction:
        return inner_product(zoom(f, d, q), f)

    f_mean = mean(f)
    idx = list(range(start, size))
    zero = QuadraticNumber(0)
    rows = [[zero] * len(idx) for _ in idx]
    for a, n in enumerate(idx):
        for b in range(a, len(idx)):
            n2 = idx[b]
            if n == 0:
                if n2 == 0:
                    v = QuadraticNumber(1)
                else:
                    k2, _ = scale_and_shift(n2)
                    v = QuadraticNumber.sqrt2_power(-k2) * f_mean
            else:
                k, j = scale_and_shift(n)
                k2, j2 = scale_and_shift(n2)
                d = k2 - k
                q = j2 - (j << d)
                if not 0 <= q < 1 << d:
                    continue
                v = QuadraticNumber.sqrt2_power(-d) * block(d, q)
            rows[a][b] = rows[b][a] = v
    return GramMatrix(tuple(idx), tuple(map(tuple, rows)))


def extreme_eigenvalues(g: GramMatrix | np.ndarray, tol: float = 1e-12) -> tuple[float, float, float]:
    """``(lambda_min, lambda_max, residual)`` via cyclic Jacobi."""
    a = g.to_float() if isinstance(g, GramMatrix) else np.asarray(g, dtype=float)
    ev, residual = jacobi_eigenvalues(a, tol=tol)
    return float(ev[0]), float(ev[-1]), residual


@dataclass
class BoundsCertificate:
    m: int
    depth: int
    lambda_min: float
    lambda_max: float
    eig_residual: float
    deviation_norm_lsq: float | None = None
    norm_sum_interval: tuple[float, float] | None = None
    tail_upper: float | None = None
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def A_est(self) -> float:
        return math.sqrt(self.lambda_min)

    @property
    def B_est(self) -> float:
        return math.sqrt(self.lambda_max)

    @property
    def deviation_norm(self) -> float | None:
        if self.deviation_norm_lsq is None:
            return None
        return math.sqrt(self.deviation_norm_lsq)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(self.checks.values())

    def to_json(self) -> dict:
        lo_hi = list(self.norm_sum_interval) if self.norm_sum_interval else None
        return {
            "m": self.m,
            "depth": self.depth,
            "lambda_min": self.lambda_min,
            "lambda_max": self.lambda_max,
            "A_est": self.A_est,
            "B_est": self.B_est,
            "deviation_norm": self.deviation_norm,
            "norm_sum": lo_hi,
            "pass": self.passed,
            "eig_residual": self.eig_residual,
            "checks": dict(self.checks),
        }


def psi_gram(m: int, depth: int) -> GramMatrix:
    """Gram matrix of ``psi_{m,n}``, ``0 <= n < 2**depth`` (m = 0: Haar)."""
    return affine_gram(generator(m), 1 << depth)


def deviation_gram(m: int, depth: int) -> GramMatrix:
    """Gram matrix of ``chi_n - psi_{m,n}``, ``1 <= n < 2**depth``.

    Both systems share dilations, so the differences form the affine system of
    the single generator ``r - psi_m``.
    """
    g = rademacher(0) - generator(m)
    return affine_gram(g, 1 << depth, start=1)


def riesz_bounds_estimate(m: int, depth: int, tol: float = 1e-12) -> BoundsCertificate:
    if m < 0 or depth < 1:
        raise ValueError("need m >= 0 and depth >= 1")
    lo, hi, res = extreme_eigenvalues(psi_gram(m, depth), tol)
    cert = BoundsCertificate(m, depth, lo, hi, res)
    cert.checks["eigen_containment"] = LAMBDA_LO <= lo and hi <= LAMBDA_HI
    cert.checks["eig_residual"] = res < tol
    return cert


def deviation_norm(m: int, depth: int, tol: float = 1e-12) -> float:
    """Largest singular value of the deviation section, ``sqrt(lambda_max)``."""
    if m < 1:
        raise ValueError("m must be >= 1")
    _, hi, _ = extreme_eigenvalues(deviation_gram(m, depth), tol)
    return math.sqrt(max(hi, 0.0))


def norm_brackets(m: int, max_index: int = DEFAULT_MAX_INDEX) -> list[tuple[Fraction, Fraction]]:
    """Exact squared-norm brackets for ``f_{m,s}``, s = 1..m."""
    dec = decompose(m, max_index)
    return [dec.norm_sq_bracket(s) for s in range(1, m + 1)]


def _sqrt(x: Fraction) -> float:
    return math.sqrt(x.numerator / x.denominator) if x else 0.0


def norm_sum_certificate(m: int, max_index: int = DEFAULT_MAX_INDEX) -> tuple[float, float]:
    """Interval containing ``sum_s ||f_{m,s}||``."""
    brackets = norm_brackets(m, max_index)
    return (
        math.fsum(_sqrt(lo) for lo, _ in brackets),
        math.fsum(_sqrt(hi) for _, hi in brackets),
    )


def tail_norm_upper(m: int, max_index: int = DEFAULT_MAX_INDEX) -> float:
    """Upper bound for ``sum_{s >= 2} ||f_{m,s}||``."""
    return math.fsum(_sqrt(hi) for _, hi in norm_brackets(m, max_index)[1:])


def full_report(
    m: int, depth: int = 6, max_index: int = DEFAULT_MAX_INDEX, tol: float = 1e-12
) -> BoundsCertificate:
    """Every certificate for one m, aggregated into pass/fail flags."""
    if m < 1:
        raise ValueError("m must be >= 1")
    cert = riesz_bounds_estimate(m, depth, tol)
    cert.deviation_norm_lsq = deviation_norm(m, depth, tol) ** 2
    cert.norm_sum_interval = norm_sum_certificate(m, max_index)
    cert.tail_upper = tail_norm_upper(m, max_index)
    f1 = f1_sq_norm(m, max_index)
    checks = cert.checks
    checks["spline_equations"] = all(spline_checks(build_spline(m)).values())
    checks["lemma3"] = verify_lemma3(m, max_index)
    checks["f1_norm_identity"] = f1 == (gamma(m) + Fraction(1, 2)) ** 2 + Fraction(1, 12)
    checks["f1_below_7_9"] = f1 < Fraction(49, 81)
    checks["deviation"] = cert.deviation_norm <= DEVIATION_BOUND
    checks["norm_sum"] = cert.norm_sum_interval[1] < DEVIATION_BOUND
    checks["tail"] = cert.tail_upper < TAIL_BOUND
    return cert
