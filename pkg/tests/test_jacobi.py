from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from spline_affine.jacobi import ConvergenceError, jacobi_eigenvalues, off_diagonal_norm


def symmetric(a):
    return (a + a.T) / 2


@given(
    st.integers(min_value=1, max_value=12).flatmap(
        lambda n: arrays(np.float64, (n, n), elements=st.floats(-10, 10, allow_nan=False))
    )
)
def test_matches_numpy_eigvalsh(a):
    a = symmetric(a)
    ev, res = jacobi_eigenvalues(a)
    assert res < 1e-12
    np.testing.assert_allclose(ev, np.linalg.eigvalsh(a), atol=1e-10 * max(1.0, np.abs(a).max()))


def test_known_spectra():
    ev, _ = jacobi_eigenvalues(np.array([[2.0, 1.0], [1.0, 2.0]]))
    np.testing.assert_allclose(ev, [1.0, 3.0])
    ev, res = jacobi_eigenvalues(np.diag([3.0, -1.0, 2.0]))
    assert ev.tolist() == [-1.0, 2.0, 3.0] and res == 0.0


def test_random_larger_matrix():
    rng = np.random.default_rng(7)
    a = symmetric(rng.normal(size=(60, 60)))
    ev, res = jacobi_eigenvalues(a)
    assert res < 1e-12
    np.testing.assert_allclose(ev, np.linalg.eigvalsh(a), atol=1e-11)


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        jacobi_eigenvalues(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        jacobi_eigenvalues(np.array([[1.0, 2.0], [0.0, 1.0]]))


def test_sweep_cap_reports_best_residual():
    rng = np.random.default_rng(1)
    a = symmetric(rng.normal(size=(20, 20)))
    with pytest.raises(ConvergenceError) as info:
        jacobi_eigenvalues(a, tol=1e-300, max_sweeps=2)
    assert info.value.sweeps == 2
    assert 0 <= info.value.residual < off_diagonal_norm(a)
