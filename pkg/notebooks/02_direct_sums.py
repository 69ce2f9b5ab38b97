# %% [markdown]
# # Direct sums of elementary sequences
#
# The sum of two elementary sequences is the sequence of the direct sum of
# the corresponding p-torsion group schemes.  It is computed by merging the
# cycles of the two final types, ordered by a rational invariant nu.

# %%
from collections import Counter

import numpy as np

from stratlab import enumerate_elementary, es_decompose, es_sum, is_sum_indecomposable, minimal_sequence
from stratlab.newton import enumerate_symmetric_np

print(es_sum("0", "1"))
print(es_sum("0,1", "0,1,2"))
print(es_decompose("1,1,1,2").format())

# %% [markdown]
# How many sequences of each length are indecomposable?

# %%
for g in range(1, 8):
    seqs = enumerate_elementary(g)
    n = sum(is_sum_indecomposable(p) for p in seqs)
    print(f"g={g}: {n:3d} of {len(seqs):3d} indecomposable")

# %% [markdown]
# Number of factors in the decomposition, g = 6.

# %%
hist = Counter(len(es_decompose(p).factors) for p in enumerate_elementary(6))
counts = np.array([hist[k] for k in range(1, 7)])
print(dict(enumerate(counts, start=1)))

# %% [markdown]
# Minimal sequences: each symmetric Newton polygon has one EO stratum that
# lies entirely inside its Newton stratum.

# %%
for xi in enumerate_symmetric_np(5):
    print(f"{xi.format():<40} {minimal_sequence(xi)}")
