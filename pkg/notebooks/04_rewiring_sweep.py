# %% [markdown]
# # Rewiring towards a target
#
# The difference W - Lambda is cleared cell by cell with four-cell weight
# transfers that keep every strength. Each transfer is one record step.

# %%
import numpy as np

from assortrewire import ErConfig, TargetProblem, erdos_renyi, replay, solve_target, sweep
from assortrewire.rewire import DifferenceMatrix, rewire_cell

# %% [markdown]
# Clearing cell (2, 2) of a small integer difference matrix takes two
# transfers, of size 2 and 1.

# %%
psi = np.array([[0, 0, 0, 0], [0, 3, -2, -1], [1, -1, 2, -2], [-1, -2, 0, 3]])
dm = DifferenceMatrix(psi.copy())
steps = []
rewire_cell(dm, steps, 1, 1)
print([(i + 1, j + 1, k + 1, l + 1, dw) for i, j, k, l, dw in steps])
print(dm.psi)

# %% [markdown]
# A full network: solve for a target, sweep, then replay the record and
# follow the coefficients step by step.

# %%
g = erdos_renyi(ErConfig(50, 0.1, seed=3))
tm = solve_target(TargetProblem(g, [0.1, 0.1, -0.1, -0.1]))
plain = sweep(g, tm.Lambda)
reordered = sweep(g, tm.Lambda, reorder_rows=True)
print("record length", len(plain), "with reordering", len(reordered))
res = replay(g, reordered, trace_every=100)
for step, quad in zip(res.trace_steps, res.trace):
    print(step, np.round(quad, 4))
print("max |final - target|", np.abs(res.graph.W - tm.Lambda).max())
