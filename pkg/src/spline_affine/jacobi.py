"""Cyclic Jacobi diagonalization of small dense symmetric matrices."""

from __future__ import annotations

import math

import numpy as np


class ConvergenceError(RuntimeError):
    """Raised when the sweep cap is hit; carries the best residual reached."""

    def __init__(self, residual: float, sweeps: int) -> None:
        super().__init__(f"Jacobi did not converge in {sweeps} sweeps (residual {residual:.3e})")
        self.residual = residual
        self.sweeps = sweeps


def off_diagonal_norm(a: np.ndarray) -> float:
    upper = np.triu(a, 1)
    return float(math.sqrt(2.0 * np.sum(upper * upper)))


def jacobi_eigenvalues(
    matrix: np.ndarray, tol: float = 1e-12, max_sweeps: int = 100
) -> tuple[np.ndarray, float]:
    """Return ``(eigenvalues ascending, off-diagonal Frobenius residual)``.

    Row-cyclic sweeps of plane rotations; each rotation zeroes one pair
    ``(p, q)``.  Stops once the off-diagonal Frobenius norm drops below ``tol``.
    """
    a = np.array(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    if not np.array_equal(a, a.T):
        raise ValueError("matrix must be symmetric")
    n = a.shape[0]
    residual = best = off_diagonal_norm(a)
    sweeps = 0
    while residual >= tol:
        if sweeps == max_sweeps:
            raise ConvergenceError(best, sweeps)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                h = a[q, q] - a[p, p]
                if abs(h) + 100.0 * abs(apq) == abs(h):
                    t = apq / h
                else:
                    theta = h / (2.0 * apq)
                    t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.hypot(t, 1.0)
                s = t * c
                app, aqq = a[p, p], a[q, q]
                col_p = a[:, p].copy()
                col_q = a[:, q]
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                a[p, :] = a[:, p]
                a[q, :] = a[:, q]
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = a[q, p] = 0.0
        sweeps += 1
        residual = off_diagonal_norm(a)
        best = min(best, residual)
    return np.sort(np.diag(a)), residual
