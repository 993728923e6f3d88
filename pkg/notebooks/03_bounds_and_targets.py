# %% [markdown]
# # Attainable ranges and target matrices
#
# A target matrix keeps every out- and in-strength and the edge count, and
# has the requested coefficients. On a fixed support this is a linear
# program, solved here by the package's bounded simplex.

# %%
import numpy as np

from assortrewire import PAIRS, ErConfig, TargetProblem, assortativity_bounds, erdos_renyi, solve_target
from assortrewire.target import L1_TO_W, ZERO

g = erdos_renyi(ErConfig(50, 0.1, seed=5))

# %% [markdown]
# Each coefficient on its own can be pushed to the ends of its range.

# %%
for a, b in PAIRS:
    lo, hi = assortativity_bounds(g, a, b)
    print(f"r{a}{b}: [{lo:+.3f}, {hi:+.3f}]")

# %% [markdown]
# Four targets at once. Each lies inside its own range, but that does not
# make them jointly attainable; for this graph they are.

# %%
targets = [0.3, 0.3, -0.3, -0.3]
tm = solve_target(TargetProblem(g, targets, objective=ZERO))
print(tm.status, np.round(tm.achieved.to_array(), 8))

# %% [markdown]
# The L1 objective picks, among all valid targets, one closest to the
# original weights.

# %%
l1 = solve_target(TargetProblem(g, [0.1, 0.1, -0.1, -0.1], objective=L1_TO_W))
zero = solve_target(TargetProblem(g, [0.1, 0.1, -0.1, -0.1], objective=ZERO))
print("sum |w - lambda|: zero", round(np.abs(g.W - zero.Lambda).sum(), 3), "l1", round(l1.objective_value, 3))

# %% [markdown]
# A joint miss: for seed 1 the same four targets are infeasible.

# %%
print(solve_target(TargetProblem(erdos_renyi(ErConfig(50, 0.1, seed=1)), targets)).status)
