# %% [markdown]
# # Closure relations and EO / Newton intersections
#
# Closure of EO strata is decided by a search over W_I in the Weyl group,
# vectorised with numpy.  The intersection matrix is filled in by a small
# rule engine; every cell keeps a record of the rules that set it.

# %%
import numpy as np

from stratlab import classify, closure_poset, explain, poset_to_dot
from stratlab.classifier import Status
from stratlab.newton import supersingular

poset = closure_poset(5, 0)
print(len(poset.nodes), "nodes,", len(poset.hasse_edges), "covering relations")
print(poset_to_dot(poset)[:400], "...")

# %% [markdown]
# The relation matrix is a numpy boolean array.  Row sums count the strata
# above a given stratum.

# %%
above = poset.relation.sum(axis=1) - 1
for phi, k in zip(poset.nodes, above):
    print(phi, k)

# %% [markdown]
# The intersection matrix of A_5, supersingular column.

# %%
m = classify(5)
sigma = supersingular(5)
for phi in m.prank_rows(0):
    print(phi, m.status(phi, sigma).value)

# %%
for f in explain(m, "0,1,2,2,3", "[2,1]+2[1,1]+[1,2]"):
    print(f.format())

# %% [markdown]
# Undecided cells per p-rank block.

# %%
for f in range(6):
    print(f, len(m.with_status(Status.UNKNOWN, f)))
