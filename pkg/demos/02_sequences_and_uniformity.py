"""Deterministic sequence families and how uniform they actually are.

Every generator maps an integer index to [0, 1).  Low-discrepancy families
(van der Corput, Sobol, Halton, Faure, Weyl, R2) spread their points far
more evenly than a pseudo-random draw, which is the whole reason they can
replace randomness when building hypervector memories.  The centered-L2
discrepancy makes the comparison quantitative: lower is more uniform.
"""

import numpy as np

from hdseed import (
    centered_l2_discrepancy,
    point_set,
    scatter_export,
    sobol,
    vdc,
    weyl,
)

# radical inverse: reflect the base-b digits of the index about the point
print("first 8 van der Corput values, base 2:",
      [vdc(i, 2) for i in range(8)])
print("vdc(209, 7) =", vdc(209, 7), "= 305/343")

# the first Sobol dimension IS the base-2 radical inverse; higher
# dimensions XOR precomputed direction integers instead
assert all(sobol(1, i) == vdc(i, 2) for i in range(256))
print("sobol dim 2, first 4 values:", [sobol(2, i) for i in range(4)])

# irrational rotation: frac(i * beta) walks the unit interval evenly
beta = float(np.sqrt(2)) - 1
print("weyl(i, sqrt(2)-1):", [round(weyl(i, beta), 4) for i in range(5)])

# discrepancy table over 1024 2-D points per family
n, d = 1024, 2
print(f"\ncentered-L2 discrepancy, n={n}, d={d} (lower = more uniform)")
for kind in ("sobol", "halton", "faure", "r2", "weyl", "hammersley",
             "latin", "random"):
    val = centered_l2_discrepancy(point_set(kind, n, d, seed=1))
    print(f"  {kind:11s} {val:.6f}")

rand_vals = [centered_l2_discrepancy(point_set("random", n, d, seed=s))
             for s in range(10)]
sob_val = centered_l2_discrepancy(point_set("sobol", n, d))
print(f"\nsobol {sob_val:.6f} vs random mean over 10 seeds "
      f"{np.mean(rand_vals):.6f}: "
      f"{np.mean(rand_vals) / sob_val:.0f}x more uniform")

# export a scatter for external plotting
scatter_export(point_set("sobol", 512, 2), "sobol_512.csv")
scatter_export(point_set("random", 512, 2, seed=1), "random_512.csv")
print("\nwrote sobol_512.csv and random_512.csv (columns x,y)")
