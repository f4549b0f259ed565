"""Shared strategies and a pure-Fraction oracle independent of the numpy storage."""

from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from spline_affine.dyadic_poly import PiecewisePoly, linear_combine

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


# -- oracle -----------------------------------------------------------------
# Pieces are plain lists of Fractions; nothing below touches PiecewisePoly
# internals beyond the public ``coeffs`` / ``level`` accessors.


def poly_eval(coeffs, t: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_diff(a):
    return [i * c for i, c in enumerate(a)][1:] or [Fraction(0)]


def poly_antider(a):
    return [Fraction(0)] + [c / (i + 1) for i, c in enumerate(a)]


def piece_at(f: PiecewisePoly, level: int, i: int):
    """Global coefficients of f on cell i of the given (finer or equal) level."""
    return list(f.coeffs[i >> (level - f.level)])


def oracle_point(f: PiecewisePoly, t: Fraction) -> Fraction:
    x = Fraction(t) % 1
    i = math.floor(x * (1 << f.level))
    return poly_eval(f.coeffs[i], x)


def oracle_inner(f: PiecewisePoly, g: PiecewisePoly) -> Fraction:
    level = max(f.level, g.level)
    total = Fraction(0)
    for i in range(1 << level):
        anti = poly_antider(poly_mul(piece_at(f, level, i), piece_at(g, level, i)))
        total += poly_eval(anti, Fraction(i + 1, 1 << level)) - poly_eval(anti, Fraction(i, 1 << level))
    return total


def oracle_integral(f: PiecewisePoly) -> Fraction:
    return oracle_inner(f, PiecewisePoly.constant(1))


def rademacher_value(k: int, t: Fraction) -> int:
    """r_k(t) from the floor formula, with no piecewise data involved."""
    return -1 if math.floor(Fraction(t) % 1 * (1 << (k + 1))) % 2 else 1


def dyadic_points(level: int):
    """Cell midpoints and left endpoints at the given level."""
    n = 1 << level
    return [Fraction(2 * i + 1, 2 * n) for i in range(n)] + [Fraction(i, n) for i in range(n)]


# -- strategies -------------------------------------------------------------

fractions_small = st.builds(
    Fraction, st.integers(min_value=-100, max_value=100), st.integers(min_value=1, max_value=100)
)


@st.composite
def piecewise_polys(draw, max_level: int = 4, max_degree: int = 3, zero_mean: bool = False):
    level = draw(st.integers(min_value=0, max_value=max_level))
    degree = draw(st.integers(min_value=0, max_value=max_degree))
    rows = [
        [draw(fractions_small) for _ in range(degree + 1)] for _ in range(1 << level)
    ]
    p = PiecewisePoly.from_coeffs(level, rows)
    if zero_mean:
        p = p - PiecewisePoly.constant(oracle_integral(p))
    return p


def random_poly(rng: random.Random, zero_mean: bool = True) -> PiecewisePoly:
    """Seeded counterpart of :func:`piecewise_polys` for plain loops."""
    level = rng.randint(0, 4)
    degree = rng.randint(0, 3)
    rows = [
        [Fraction(rng.randint(-100, 100), rng.randint(1, 100)) for _ in range(degree + 1)]
        for _ in range(1 << level)
    ]
    p = PiecewisePoly.from_coeffs(level, rows)
    if zero_mean:
        p = linear_combine([(1, p), (-oracle_integral(p), PiecewisePoly.constant(1))])
    return p


# -- acceptance reporting ---------------------------------------------------

_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    num, title = mark.args
    if rep.failed or (rep.when == "call" and num not in _criteria):
        _criteria[num] = ("PASS" if rep.passed else "FAIL", title)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        status, title = _criteria[num]
        terminalreporter.write_line(f"{status} criterion {num:2d}: {title}")
