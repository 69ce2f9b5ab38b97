# %% [markdown]
# # EO strata and their first Newton slope
#
# An EO stratum of A_g is labelled by an elementary sequence phi, a
# non-decreasing sequence of length g that goes up by at most one each step.
# Here we list the strata of A_5 with p-rank 0 and the smallest slope of a
# point on each one.

# %%
from collections import defaultdict

import numpy as np

from stratlab import enumerate_elementary, eo_dimension, a_number, first_newton_slope, slope_trace

rows = enumerate_elementary(5, 0)
print(len(rows), "strata of p-rank 0")

# %%
by_slope = defaultdict(list)
for phi in rows:
    by_slope[first_newton_slope(phi)].append(phi)
for lam in sorted(by_slope):
    print(f"{str(lam):>4}", " ".join(str(p) for p in by_slope[lam]))

# %% [markdown]
# The slope comes from iterating a self-map of {1..2g} built out of the
# final sequence and counting how much of its eventual image sits in the top half.

# %%
print(slope_trace("0,1,2,2,3").format())

# %% [markdown]
# Slope against dimension.  Deeper strata (small dimension, large a-number)
# are forced towards the supersingular slope 1/2.

# %%
dims = np.array([eo_dimension(p) for p in rows])
lams = np.array([float(first_newton_slope(p)) for p in rows])
anum = np.array([a_number(p) for p in rows])
for d in np.unique(dims):
    sel = dims == d
    print(f"dim {d:2d}: slopes {sorted(set(lams[sel].round(3)))}  a-numbers {sorted(set(anum[sel]))}")
print("correlation dim vs slope:", np.corrcoef(dims, lams)[0, 1].round(3))
