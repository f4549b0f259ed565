from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import oracle_inner, oracle_point, piecewise_polys
from spline_affine.affine_operators import (
    affine_element,
    build_rho,
    build_spline,
    generator,
    granados_element,
    kappa,
    lam,
    rademacher_product,
    s_alpha,
    spline_checks,
    u_op,
    w0,
    w1,
    w_alpha,
)
from spline_affine.chaos_spectrum import w1_squared_lambda
from spline_affine.dyadic_poly import (
    PiecewisePoly,
    derivative,
    evaluate,
    inner_product,
    is_smooth,
    linear_combine,
    mean,
    norm_sq,
    volterra,
)
from spline_affine.walsh_index import (
    MultiIndex,
    haar_fn,
    natural_index,
    paley_index,
    rademacher,
    scale_and_shift,
    walsh_coefficients,
    walsh_fn,
    words,
)

ONE = PiecewisePoly.constant(1)
R = rademacher(0)
bits = st.lists(st.integers(min_value=0, max_value=1), max_size=5).map(MultiIndex)


def test_kappa():
    assert [kappa(m) for m in (1, 2, 3)] == [2**3, 2**7, 2**12]


def test_w_operators_on_simple_inputs():
    assert w0(ONE) == ONE
    assert w1(ONE) == R
    pts = [Fraction(i, 64) for i in range(64)]
    lm = lam()
    assert all(evaluate(w1(lm), t) == R(t) * lm(2 * t) for t in pts)


@given(piecewise_polys())
def test_w1_output_is_antiperiodic(f):
    g = w1(f)
    assert all(evaluate(g, t + Fraction(1, 2)) == -evaluate(g, t) for t in [Fraction(i, 32) for i in range(16)])
    assert mean(g) == 0


def test_w1_squared_lambda_spectrum():
    coeffs = walsh_coefficients(w1(w1(lam())), 1 << 10)
    expected = {3 + (1 << (k + 2)): Fraction(1, 2 ** (k + 1)) for k in range(8)}
    assert {n: c for n, c in enumerate(coeffs) if c} == expected
    assert w1_squared_lambda(1 << 10) == linear_combine((c, walsh_fn(n)) for n, c in expected.items())


def test_u_on_rademacher():
    ur = u_op(R)
    assert ur == R - w1(w1(lam()))
    assert inner_product(ur, R) == 1
    with pytest.raises(ValueError, match="zero-mean"):
        u_op(ONE)


@given(piecewise_polys(max_level=3, zero_mean=True))
def test_u_output_mean_and_r_coefficient(f):
    g = u_op(f)
    assert mean(g) == 0
    # (U f, r) = 4 (W1 V f, r) = 4 * mean(V f), since r * r = 1
    assert inner_product(g, R) == 4 * mean(volterra(f))


def test_u_keeps_unit_coefficient_along_the_chain():
    f = R
    for _ in range(4):
        f = u_op(f)
        assert inner_product(f, R) == 1


@pytest.mark.parametrize("m", range(1, 7))
def test_spline_spec_invariants(m):
    spec = build_spline(m)
    p = spec.poly
    assert spec.kappa == kappa(m) and p.degree == m and p.level == m + 1
    assert all(spline_checks(spec).values())
    assert inner_product(p, R) == oracle_inner(p, R) == 1
    assert is_smooth(p, m - 1) and not is_smooth(p, m)
    grid = [Fraction(i, 1 << (m + 3)) for i in range(1 << (m + 3))]
    assert all(oracle_point(p, t + Fraction(1, 2)) == -oracle_point(p, t) for t in grid)
    json.dumps(spec.to_json())


@pytest.mark.parametrize("m", range(1, 7))
def test_spline_closed_form(m):
    # kappa * V^m(r_0 ... r_m), corrected by a polynomial of degree < m so that
    # every derivative of order < m vanishes at 0, is the same function
    q = rademacher_product(m) * kappa(m)
    for _ in range(m):
        q = volterra(q)
    assert derivative_chain_at_zero(q, m) == [0] * m
    assert q == build_spline(m).poly


def derivative_chain_at_zero(p, m):
    vals = []
    for _ in range(m):
        vals.append(evaluate(p, 0))
        p = derivative(p)
    return vals


def test_spline_examples():
    p1 = build_spline(1)
    assert [p1(Fraction(i, 4)) for i in range(5)] == [0, 2, 0, -2, 0]
    d2 = derivative(derivative(build_spline(2).poly))
    assert d2 == rademacher_product(2) * 128
    with pytest.raises(ValueError):
        build_spline(0)
    assert generator(0) == R


def test_w_alpha_order_convention():
    assert w_alpha(R, ()) == R
    assert w_alpha(R, (1, 0)) == walsh_fn(5)
    for k in range(7):
        for alpha in words(k):
            assert w_alpha(R, alpha) == walsh_fn(paley_index(alpha))


@given(piecewise_polys(max_level=3), bits)
def test_w_alpha_preserves_norm(f, alpha):
    assert norm_sq(w_alpha(f, alpha)) == norm_sq(f)


def test_s_alpha_is_haar_system():
    assert s_alpha(R, ()).poly == R
    for k in range(7):
        for alpha in words(k):
            s = s_alpha(R, alpha)
            h = haar_fn(natural_index(alpha))
            assert s.poly == h.poly and s.sqrt2_exponent == h.sqrt2_exponent


def s_by_composition(f, alpha):
    """``2**(k/2) S^alpha f`` from ``S_0, S_1 = (W0 +- W1)/sqrt 2``, innermost letter last."""
    for a in reversed(tuple(alpha)):
        f = w0(f) - w1(f) if a else w0(f) + w1(f)
    return f


@pytest.mark.parametrize("k", range(6))
def test_s_alpha_agrees_with_operator_composition(k):
    for alpha in words(k):
        s = s_alpha(R, alpha)
        assert s_by_composition(R, alpha) == s.poly * (1 << k)


@given(bits, st.integers(min_value=1, max_value=3))
def test_s_alpha_support_and_norm(alpha, m):
    psi = build_spline(m).poly
    s = s_alpha(psi, alpha)
    k, j = scale_and_shift(natural_index(alpha))
    lo, hi = s.poly.support()
    assert Fraction(j, 1 << k) <= lo and hi <= Fraction(j + 1, 1 << k)
    assert s.norm_sq() == norm_sq(psi)


def test_affine_element():
    assert affine_element(R, 0).poly == ONE
    for n in range(1, 40):
        assert affine_element(R, n) == haar_fn(n)


def test_rho():
    assert is_smooth(build_rho(1), 0)
    for m in range(1, 5):
        assert w1(build_rho(m)) == build_spline(m).poly
        assert mean(w1(build_rho(m))) == 0
    with pytest.raises(ValueError):
        build_rho(0)


def test_granados_elements():
    assert granados_element(2, 0, 1) == build_spline(2).poly
    with pytest.raises(ValueError):
        granados_element(1, 2, 3)
