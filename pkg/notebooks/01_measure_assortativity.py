# %% [markdown]
# # Measuring directed weighted assortativity
#
# Four coefficients compare the out- or in-strength at the source of each
# edge with the out- or in-strength at its target, every edge counted with
# its weight.

# %%
import numpy as np

from assortrewire import WeightedDigraph, assortativity_all, from_edge_list, strength_profile

# %% [markdown]
# A two-edge path 1 -> 2 -> 3. Every source has out-strength 1, so any
# coefficient using source out-strength is undefined.

# %%
path = from_edge_list([(1, 2, 1.0), (2, 3, 1.0)])
print(assortativity_all(path).to_dict())

# %% [markdown]
# A small weighted network with self-loops.

# %%
rng = np.random.default_rng(0)
W = np.where(rng.random((8, 8)) < 0.35, rng.gamma(5, 0.2, (8, 8)), 0.0)
g = WeightedDigraph(W)
p = strength_profile(g)
print("tau", round(p.tau, 4))
print("out-strength", np.round(p.s_out, 3))
print("in-strength ", np.round(p.s_in, 3))
print(assortativity_all(g).to_dict())
