from __future__ import annotations

import json
import math
from fractions import Fraction

import numpy as np
import pytest

from spline_affine.affine_operators import affine_system, build_spline
from spline_affine.dyadic_poly import norm_sq
from spline_affine.quadratic import QuadraticNumber
from spline_affine.riesz_analysis import (
    GramMatrix,
    affine_gram,
    deviation_gram,
    deviation_norm,
    extreme_eigenvalues,
    full_report,
    gram,
    norm_brackets,
    norm_sum_certificate,
    psi_gram,
    riesz_bounds_estimate,
    tail_norm_upper,
)
from spline_affine.walsh_index import haar_fn, rademacher, scale_and_shift


def test_generic_gram_of_haar_system():
    g = gram([haar_fn(n) for n in range(64)])
    assert g.is_identity() and g.is_symmetric()
    with pytest.raises(ValueError):
        gram([])


@pytest.mark.parametrize("m", [1, 2])
def test_fast_gram_matches_generic(m):
    psi = build_spline(m).poly
    fast = affine_gram(psi, 32)
    slow = gram(affine_system(psi, 32))
    assert fast.entries == slow.entries


def test_psi1_gram_structure():
    g = psi_gram(1, 5)
    psi = build_spline(1).poly
    assert norm_sq(psi) == Fraction(4, 3)
    for a in range(1, g.size):
        assert g[a, a] == QuadraticNumber(Fraction(4, 3))
    # disjoint supports give exact zeros
    for a in range(1, g.size):
        for b in range(1, g.size):
            ka, ja = scale_and_shift(a)
            kb, jb = scale_and_shift(b)
            lo_a, hi_a = Fraction(ja, 1 << ka), Fraction(ja + 1, 1 << ka)
            lo_b, hi_b = Fraction(jb, 1 << kb), Fraction(jb + 1, 1 << kb)
            if hi_a <= lo_b or hi_b <= lo_a:
                assert g[a, b] == 0


def test_extreme_eigenvalues_small_cases():
    assert extreme_eigenvalues(np.eye(4))[:2] == (1.0, 1.0)
    lo, hi, res = extreme_eigenvalues(np.diag([0.25, 4.0]))
    assert (lo, hi) == (0.25, 4.0) and res == 0.0
    g = GramMatrix((0, 1), ((QuadraticNumber(2), QuadraticNumber(0, 1)), (QuadraticNumber(0, 1), QuadraticNumber(2))))
    lo, hi, _ = extreme_eigenvalues(g)
    assert math.isclose(lo, 2 - math.sqrt(2), rel_tol=1e-14)
    assert math.isclose(hi, 2 + math.sqrt(2), rel_tol=1e-14)


def test_haar_sentinel_bounds():
    for depth in range(1, 6):
        cert = riesz_bounds_estimate(0, depth)
        assert cert.lambda_min == pytest.approx(1.0, abs=1e-15)
        assert cert.lambda_max == pytest.approx(1.0, abs=1e-15)


def test_interlacing_in_depth():
    rows = [riesz_bounds_estimate(2, d) for d in range(1, 7)]
    for a, b in zip(rows, rows[1:]):
        assert b.lambda_min <= a.lambda_min + 1e-12
        assert b.lambda_max >= a.lambda_max - 1e-12
    devs = [deviation_norm(2, d) for d in range(1, 7)]
    assert all(b >= a - 1e-12 for a, b in zip(devs, devs[1:]))


def test_deviation_gram_excludes_constant_term():
    g = deviation_gram(1, 3)
    assert g.n_range == tuple(range(1, 8))
    # chi_1 - psi_1 = r - psi_1 has norm^2 = 1 - 2 + 4/3 = 1/3
    assert g[0, 0] == QuadraticNumber(Fraction(1, 3))
    assert deviation_norm(1, 6) <= 0.9


def test_norm_sum_for_m1():
    # the whole residual of psi_1 sits in order 3, so the upper bracket is exact
    (b_lo, b_hi), = norm_brackets(1)
    assert b_lo < Fraction(1, 3) == b_hi
    lo, hi = norm_sum_certificate(1)
    assert lo < hi < 0.9
    assert math.isclose(hi, 1 / math.sqrt(3), rel_tol=2**-50)
    assert tail_norm_upper(1) == 0.0
    assert tail_norm_upper(6) < 0.12


@pytest.mark.parametrize("m", [1, 3])
def test_full_report_passes(m):
    cert = full_report(m, 6, 1 << 12, 1e-12)
    assert cert.passed, cert.checks
    assert cert.lambda_min <= cert.lambda_max
    assert cert.eig_residual < 1e-12
    data = cert.to_json()
    for key in ("m", "depth", "lambda_min", "lambda_max", "A_est", "B_est", "deviation_norm", "norm_sum", "pass", "eig_residual"):
        assert key in data
    assert data["A_est"] == math.sqrt(data["lambda_min"])
    json.dumps(data)


def test_full_report_rejects_m0():
    with pytest.raises(ValueError):
        full_report(0)


def test_rademacher_is_affine_generator_of_haar():
    g = affine_gram(rademacher(0), 64)
    assert g.is_identity()
