"""Walsh coefficients of psi_m sorted by Rademacher chaos order.

Run: python demos/03_chaos_spectrum.py
"""

from fractions import Fraction

from spline_affine.chaos_spectrum import decompose, f1_sq_norm, gamma, verify_lemma3

m = 3
dec = decompose(m, 1 << 12)

# Only odd orders up to 2m+1 carry energy.
for order, part in dec.partial_sq_norms.items():
    print(f"order {order:2d}: {len(dec.by_order[order]):4d} nonzero coefficients, energy {float(part):.10f}")
print("energy not captured below n = 4096:", float(dec.residual))

# The order-3 slice is pinned down completely: coefficient -(gamma + 1/2) at n = 7
# and -2^-(k+1) at n = 3 + 2^(k+2).
print("coefficient at n = 7:", dec.coeffs[7], " expected:", -(gamma(m) + Fraction(1, 2)))
print("order-3 pattern holds:", verify_lemma3(m))

# That gives the exact norm of the first component and its 7/9 bound.
f1 = f1_sq_norm(m)
print(f"||f_(m,1)||^2 = {f1} = {float(f1):.6f} < (7/9)^2 = {49 / 81:.6f}")

# gamma_m climbs toward 2/9.
print([str(gamma(k)) for k in range(1, 6)])
