"""Walsh spectra of the splines and their grouping into Rademacher chaos.

The Walsh coefficient table of psi_m is computed exactly (see
:func:`walsh_index.walsh_coefficients`).  The order-(2s+1) slice of that table
is ``-f_{m,s}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .affine_operators import affine_element, build_spline, w_alpha
from .dyadic_poly import PiecewisePoly, inner_product, linear_combine, mean, norm_sq
from .quadratic import QuadraticNumber
from .walsh_index import MultiIndex, chaos_order, paley_multiindex, walsh_coefficients, walsh_fn, words

DEFAULT_MAX_INDEX = 1 << 12


def walsh_coeff(f: PiecewisePoly, n: int) -> Fraction:
    """``(f, w_n)`` by direct exact integration (Paley order)."""
    if n < 1:
        raise ValueError("Walsh index must be >= 1")
    return inner_product(f, walsh_fn(n))


@dataclass(frozen=True)
class ChaosDecomposition:
    """Walsh table of psi_m grouped by chaos order, with exact residual."""

    m: int
    max_index: int
    coeffs: dict[int, Fraction]
    by_order: dict[int, dict[int, Fraction]]
    partial_sq_norms: dict[int, Fraction]
    residual: Fraction
    norm_sq: Fraction

    def spectrum(self, order: int) -> set[MultiIndex]:
        """Multi-indices (Paley) of the nonzero coefficients of one chaos slice."""
        return {paley_multiindex(n) for n in self.by_order.get(order, {})}

    def component(self, s: int) -> PiecewisePoly:
        """Truncated ``f_{m,s}`` = minus the order-(2s+1) slice, as a function."""
        terms = [(-c, walsh_fn(n)) for n, c in self.by_order.get(2 * s + 1, {}).items()]
        return linear_combine(terms)

    def norm_sq_bracket(self, s: int) -> tuple[Fraction, Fraction]:
        """Exact bounds for ``||f_{m,s}||**2``.

        The lower bound is the captured slice energy; the upper bound adds the
        whole global residual, since the unseen tail could all belong to this
        slice.
        """
        part = self.partial_sq_norms.get(2 * s + 1, Fraction(0))
        return part, part + self.residual


def decompose(m: int, max_index: int = DEFAULT_MAX_INDEX) -> ChaosDecomposition:
    if m < 1:
        raise ValueError("m must be >= 1")
    if max_index < 7:
        raise ValueError("max_index must be >= 7")
    psi = build_spline(m).poly
    table = walsh_coefficients(psi, max_index)
    coeffs = {n: table[n] for n in range(1, max_index + 1)}
    by_order: dict[int, dict[int, Fraction]] = {}
    for n, c in coeffs.items():
        if c:
            by_order.setdefault(chaos_order(n), {})[n] = c
    by_order = dict(sorted(by_order.items()))
    partial = {d: sum((c * c for c in sl.values()), Fraction(0)) for d, sl in by_order.items()}
    total = norm_sq(psi)
    captured = sum(partial.values(), Fraction(0)) + table[0] ** 2
    return ChaosDecomposition(
        m=m,
        max_index=max_index,
        coeffs=coeffs,
        by_order=by_order,
        partial_sq_norms=partial,
        residual=total - captured,
        norm_sq=total,
    )


def gamma(m: int) -> Fraction:
    """Order-3 drift constant ``2/9 (1 - 4**(1-m))``."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return Fraction(2, 9) * (1 - Fraction(1, 4 ** (m - 1)))


def gamma_recursive(m: int) -> Fraction:
    g = Fraction(0)
    for _ in range(m - 1):
        g = (g + Fraction(2, 3)) / 4
    return g


def lemma3_expected(m: int, n: int) -> Fraction:
    """Predicted psi_m coefficient at an order-3 index n."""
    if n == 7:
        return -(gamma(m) + Fraction(1, 2))
    # 3 + 2**(k+2), k >= 1
    rest = n - 3
    if rest > 4 and rest & (rest - 1) == 0:
        k = rest.bit_length() - 3
        return -Fraction(1, 2 ** (k + 1))
    return Fraction(0)


def order3_mismatches(m: int, max_index: int = DEFAULT_MAX_INDEX) -> list[tuple[int, Fraction, Fraction]]:
    dec = decompose(m, max_index)
    out = []
    for n, c in dec.coeffs.items():
        if chaos_order(n) == 3:
            want = lemma3_expected(m, n)
            if c != want:
                out.append((n, c, want))
    return out


def verify_lemma3(m: int, max_index: int = DEFAULT_MAX_INDEX) -> bool:
    return not order3_mismatches(m, max_index)


def f1_sq_norm(m: int, max_index: int = DEFAULT_MAX_INDEX) -> Fraction:
    """``||f_{m,1}||**2``: the captured order-3 energy plus the exact geometric tail.

    The tail beyond ``max_index`` follows the order-3 pattern, which is only
    valid once :func:`verify_lemma3` holds for the same table.
    """
    dec = decompose(m, max_index)
    tail = Fraction(0)
    k = 1
    while 3 + (1 << (k + 2)) <= max_index:
        k += 1
    # remaining terms sum_{k' >= k} 4**-(k'+1) = 4**-(k+1) * 4/3
    tail = Fraction(1, 4 ** (k + 1)) * Fraction(4, 3)
    return dec.partial_sq_norms.get(3, Fraction(0)) + tail


def is_simple_spectrum(spec: Iterable[Sequence[int]]) -> bool:
    """True iff no word of the set is a proper suffix of another.

    For a finite spectrum this is equivalent to unique factorisation
    ``alpha beta = alpha' beta'`` with beta, beta' in the set.
    """
    items = {tuple(b) for b in spec}
    for b in items:
        for cut in range(1, len(b) + 1):
            if b[cut:] in items:
                return False
    return True


def has_chaos_pattern(spec: Iterable[Sequence[int]]) -> bool:
    """True iff every word starts with 1 and all words have the same number of ones."""
    items = [tuple(b) for b in spec]
    if not items:
        return True
    ones = {sum(b) for b in items}
    return len(ones) == 1 and all(b and b[0] == 1 for b in items)


@dataclass(frozen=True)
class OrthogonalityReport:
    depth: int
    norm_sq: Fraction
    walsh_max_offdiag: Fraction
    haar_max_offdiag: QuadraticNumber
    walsh_diag_ok: bool
    haar_diag_ok: bool

    @property
    def orthogonal(self) -> bool:
        return (
            self.walsh_max_offdiag == 0
            and self.haar_max_offdiag == 0
            and self.walsh_diag_ok
            and self.haar_diag_ok
        )


def orthogonality_report(f: PiecewisePoly, depth: int) -> OrthogonalityReport:
    """Exact Gram data of the affine Walsh and Haar systems of f up to word length depth."""
    if f.is_zero():
        raise ValueError("generator must be nonzero")
    if mean(f) != 0:
        raise ValueError("generator must have zero mean")
    alphas = [a for k in range(depth + 1) for a in words(k)]
    nsq = norm_sq(f)

    walsh = [w_alpha(f, a) for a in alphas]
    w_off = Fraction(0)
    w_diag = True
    for i, g in enumerate(walsh):
        w_diag &= inner_product(g, g) == nsq
        for h in walsh[i + 1 :]:
            w_off = max(w_off, abs(inner_product(g, h)))

    haar = [affine_element(f, n) for n in range(1, 1 << (depth + 1))]
    h_off = QuadraticNumber(0)
    h_diag = True
    for i, g in enumerate(haar):
        h_diag &= g.norm_sq() == nsq
        for h in haar[i + 1 :]:
            h_off = max(h_off, abs(g.inner(h)))
    return OrthogonalityReport(depth, nsq, w_off, h_off, w_diag, h_diag)


def w1_squared_lambda(max_index: int) -> PiecewisePoly:
    """``W1^2 lambda`` truncated to Walsh indices ``<= max_index``.

    ``W1^2 lambda = sum_k 2**-(k+1) r_0 r_1 r_{k+2}``; the term with index
    ``3 + 2**(k+2)`` is kept when that index is within range.
    """
    terms = []
    k = 0
    while 3 + (1 << (k + 2)) <= max_index:
        terms.append((Fraction(1, 2 ** (k + 1)), walsh_fn(3 + (1 << (k + 2)))))
        k += 1
    return linear_combine(terms)
