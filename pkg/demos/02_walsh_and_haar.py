"""Walsh and Haar systems, the two enumerations, and the matrix between them.

Run: python demos/02_walsh_and_haar.py
"""

from fractions import Fraction

import numpy as np

from spline_affine.affine_operators import s_alpha, w_alpha
from spline_affine.walsh_index import (
    MultiIndex,
    index_table,
    natural_index,
    paley_index,
    rademacher,
    walsh_fn,
    walsh_matrix,
)

r = rademacher(0)

# A word alpha names both a Walsh function W^alpha r and a Haar function S^alpha r.
# Paley order reads alpha least significant bit first, natural order the other way.
for alpha, n_paley, n_natural, d in index_table(3)[7:]:
    print(f"alpha={alpha:>3}  paley={n_paley:2d}  natural={n_natural:2d}  chaos order={d}")

alpha = MultiIndex.parse("10")
print("W^(1,0) r is w_5:", w_alpha(r, alpha) == walsh_fn(paley_index(alpha)))
h = s_alpha(r, alpha)
print("S^(1,0) r lives on", tuple(map(str, h.poly.support())), "with scale 2^(k/2), k =", h.sqrt2_exponent)
print("natural index of (1,0):", natural_index(alpha))

# Level-3 sign matrix: rows are Walsh, columns Haar, both inside 2^3 .. 2^4 - 1.
mat = walsh_matrix(3)
print(mat.signs)
print("signs^T signs == 8 I:", mat.is_unitary())

# Sampling w_n on the level-4 grid gives the familiar +-1 patterns.
grid = [Fraction(i, 16) for i in range(16)]
patterns = np.array([[int(walsh_fn(n, 4)(t)) for t in grid] for n in range(1, 9)])
print(patterns)
