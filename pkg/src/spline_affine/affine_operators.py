"""Dilation-modulation operators and the spline generators built from them.

``W0 f(t) = f(2t)``, ``W1 f(t) = r(t) f(2t)``, ``V`` integrates from 0 and
``U = 4 W1 V``.  The spline of order m is ``psi_m = U^m r``; the companion
function ``rho_m = (4 V W1)^m 1`` satisfies ``psi_m = W1 rho_m``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .dyadic_poly import (
    PiecewisePoly,
    ScaledPoly,
    derivative,
    dilate,
    evaluate,
    half_shift,
    inner_product,
    is_smooth,
    linear_combine,
    mean,
    squeeze,
    volterra,
)
from .walsh_index import (
    natural_index,
    rademacher,
    scale_and_shift,
    walsh_fn,
    walsh_matrix,
    words,
)

__all__ = [
    "ScaledPoly",
    "SplineSpec",
    "kappa",
    "lam",
    "w0",
    "w1",
    "u_op",
    "build_spline",
    "build_rho",
    "w_alpha",
    "s_alpha",
    "s_alpha_expansion",
    "affine_element",
    "affine_system",
    "granados_element",
    "spline_checks",
]


def kappa(m: int) -> int:
    """Leading constant ``2**(m(m+5)/2)`` of the m-th derivative of psi_m."""
    return 1 << (m * (m + 5) // 2)


def lam() -> PiecewisePoly:
    """The sawtooth ``1 - 2t`` on [0, 1), periodically extended."""
    return PiecewisePoly.from_coeffs(0, [[1, -2]])


def w0(f: PiecewisePoly) -> PiecewisePoly:
    return dilate(f, 1)


def w1(f: PiecewisePoly) -> PiecewisePoly:
    g = dilate(f, 1)
    h = g.num_pieces // 2
    num = g._num.copy()
    num[h:] = -num[h:]
    return PiecewisePoly(g.level, num, g._den)


def u_op(f: PiecewisePoly) -> PiecewisePoly:
    """``U f = 4 W1 V f``; defined on zero-mean (periodic-antiderivative) inputs."""
    if mean(f) != 0:
        raise ValueError("U requires zero-mean input")
    return w1(volterra(f)) * 4


def w_alpha(f: PiecewisePoly, alpha: Sequence[int]) -> PiecewisePoly:
    """``W^alpha f = W_{alpha_0}(...(W_{alpha_{k-1}} f))``; ``W^alpha r`` is w at paley_index(alpha)."""
    for a in reversed(tuple(alpha)):
        f = w1(f) if a else w0(f)
    return f


def affine_element(f: PiecewisePoly, n: int) -> ScaledPoly:
    """``f_n(t) = 2**(k/2) f(2**k t - j)``, ``n = 2**k + j``, with f read on [0, 1).

    ``f_0`` is the constant 1.
    """
    if n < 0:
        raise ValueError("affine index must be non-negative")
    if n == 0:
        return ScaledPoly(PiecewisePoly.constant(1), 0)
    k, j = scale_and_shift(n)
    return ScaledPoly(squeeze(f, k, j), k)


def affine_system(f: PiecewisePoly, size: int, start: int = 0) -> list[ScaledPoly]:
    return [affine_element(f, n) for n in range(start, size)]


def s_alpha(f: PiecewisePoly, alpha: Sequence[int]) -> ScaledPoly:
    """``S^alpha f``, realised as the affine element at natural_index(alpha)."""
    return affine_element(f, natural_index(alpha))


def s_alpha_expansion(f: PiecewisePoly, alpha: Sequence[int]) -> PiecewisePoly:
    """``2**(k/2) S^alpha f`` expanded as ``sum_beta sign(alpha, beta) W^beta f``.

    Rational throughout; used to cross-check :func:`s_alpha`.
    """
    k = len(alpha)
    mat = walsh_matrix(k)
    return linear_combine((mat.sign(alpha, beta), w_alpha(f, beta)) for beta in words(k))


@lru_cache(maxsize=None)
def build_rho(m: int) -> PiecewisePoly:
    """``rho_m = (4 V W1)^m 1``."""
    if m < 1:
        raise ValueError("rho_m is defined for m >= 1")
    p = PiecewisePoly.constant(1)
    for _ in range(m):
        p = volterra(w1(p)) * 4
    return p


def granados_element(m: int, k: int, n: int) -> PiecewisePoly:
    """``rho_m(2**(k+1) t) * w_n(t)`` for ``2**k <= n < 2**(k+1)``."""
    if not (1 << k) <= n < (1 << (k + 1)):
        raise ValueError(f"n={n} outside [2**{k}, 2**{k + 1})")
    return dilate(build_rho(m), k + 1) * walsh_fn(n)


# -- splines ----------------------------------------------------------------


@dataclass(frozen=True)
class SplineSpec:
    """The spline psi_m with its derivative constant."""

    m: int
    kappa: int
    poly: PiecewisePoly

    def __call__(self, t: object) -> Fraction:
        return evaluate(self.poly, t)

    def to_json(self) -> dict:
        return {"m": self.m, "kappa": str(self.kappa), "poly": self.poly.to_json()}


def rademacher_product(m: int) -> PiecewisePoly:
    """``r_0 r_1 ... r_m`` (the Walsh function of index 2**(m+1) - 1)."""
    p = rademacher(0, m + 1)
    for k in range(1, m + 1):
        p = p * rademacher(k, m + 1)
    return p


def spline_checks(spec: SplineSpec) -> dict[str, bool]:
    """Evaluate every defining property of psi_m exactly."""
    m, p = spec.m, spec.poly
    dm = p
    initial = True
    for _ in range(m):
        if evaluate(dm, 0) != 0:
            initial = False
        dm = derivative(dm)
    return {
        "derivative_identity": dm == rademacher_product(m) * spec.kappa,
        "initial_conditions": initial,
        "antiperiodic": half_shift(p) == -p,
        "normalized": inner_product(p, rademacher(0)) == 1,
        "smooth": is_smooth(p, m - 1),
        "zero_mean": mean(p) == 0,
    }


@lru_cache(maxsize=None)
def build_spline(m: int) -> SplineSpec:
    """``psi_m = U^m r``, checked against its defining differential equation."""
    if m < 1:
        raise ValueError("build_spline needs m >= 1 (m = 0 is the Haar generator)")
    p = rademacher(0)
    for _ in range(m):
        p = u_op(p)
    spec = SplineSpec(m, kappa(m), p)
    failed = [name for name, ok in spline_checks(spec).items() if not ok]
    if failed:
        raise ArithmeticError(f"psi_{m} violates: {', '.join(failed)}")
    return spec


def generator(m: int) -> PiecewisePoly:
    """Generating function of the order-m affine system; m = 0 gives the Haar r."""
    if m == 0:
        return rademacher(0)
    return build_spline(m).poly
