# %% [markdown]
# # Random network generators
#
# Directed Erdos-Renyi graphs with self-loops and gamma weights, and a
# directed preferential-attachment model that adds one weighted edge per step.

# %%
import numpy as np

from assortrewire import ErConfig, PaConfig, assortativity_all, erdos_renyi, nnz, preferential_attachment

# %% [markdown]
# ER: the edge count is binomial with mean n^2 p, and the coefficients
# shrink towards zero as n grows.

# %%
counts = [nnz(erdos_renyi(ErConfig(50, 0.1, seed=s))) for s in range(200)]
print("mean nnz", np.mean(counts), "expected", 50 * 50 * 0.1)
for n in (50, 100, 200):
    q = np.mean([assortativity_all(erdos_renyi(ErConfig(n, 0.1, seed=s))).to_array() for s in range(10)], axis=0)
    print(n, np.round(q, 4))

# %% [markdown]
# PA: alpha adds a new source, beta links two existing nodes, gamma adds a
# new target. With alpha = gamma = (1 - beta) / 2 a larger beta gives fewer,
# denser nodes.

# %%
for beta in (0.6, 0.7, 0.8):
    g = preferential_attachment(PaConfig.from_beta(300, beta, seed=1))
    print(beta, "nodes", g.n, "edges", nnz(g), "quad", np.round(assortativity_all(g).to_array(), 3))
