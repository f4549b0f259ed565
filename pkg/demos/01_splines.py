"""Build the splines psi_m = U^m r and look at them.

Run: python demos/01_splines.py
"""

from fractions import Fraction

import numpy as np

from spline_affine.affine_operators import build_spline, kappa, lam, u_op, w1
from spline_affine.dyadic_poly import derivative, inner_product, norm_sq
from spline_affine.walsh_index import rademacher

r = rademacher(0)

# One step of U turns the square wave into a tent-like zigzag.
psi1 = u_op(r)
print("psi_1 at t = 0, 1/4, 1/2, 3/4, 1:", [str(psi1(Fraction(i, 4))) for i in range(5)])

# The same function written through the sawtooth lambda(t) = 1 - 2t.
print("U r == r - W1^2 lambda:", psi1 == r - w1(w1(lam())))

# Every spline keeps a unit coefficient on r and grows smoother with m.
for m in range(1, 5):
    spec = build_spline(m)
    d = spec.poly
    for _ in range(m):
        d = derivative(d)
    values = sorted({str(abs(v)) for row in d.coeffs for v in row if v})
    print(
        f"m={m}: level={spec.poly.level} degree={spec.poly.degree}"
        f"  (psi, r)={inner_product(spec.poly, r)}"
        f"  ||psi||^2={norm_sq(spec.poly)}"
        f"  |m-th derivative|={values} (kappa={kappa(m)})"
    )

# Sample on a float grid for plotting elsewhere; exact values, rounded last.
t = np.linspace(0, 1, 17)
table = np.array([[float(build_spline(m)(Fraction(x).limit_denominator(64))) for x in t] for m in (1, 2, 3)])
np.set_printoptions(precision=3, suppress=True, linewidth=120)
print("samples (rows m = 1, 2, 3):")
print(table)
# All of them pass through 0, 1, 2, 1, 0, ... at multiples of 1/8 and differ in between.
print("max |psi_m| on the grid:", np.abs(table).max(axis=1))
