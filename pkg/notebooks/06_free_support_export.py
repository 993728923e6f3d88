# %% [markdown]
# # Free support via an external MILP solver
#
# When the support may change, every cell gets a binary edge indicator and
# the edge count becomes a constraint. The problem is written as MPS for an
# external solver; its answer is read back and checked from scratch.

# %%
import tempfile
from pathlib import Path

import numpy as np

from assortrewire import WeightedDigraph
from assortrewire.mps import build_mip, export_mip, import_solution, read_mps, write_solution
from assortrewire.target import FREE, TargetProblem, bound_max

W = np.array([[0, 2, 1, 0], [1, 0, 0, 3], [0, 1, 0, 1], [2, 0, 1, 0]], dtype=float)
tp = TargetProblem(WeightedDigraph(W), None, 0.5, 4.0, bound_max(1, 1), FREE)
tmp = Path(tempfile.mkdtemp())
print(export_mip(tp, tmp / "toy.mps").extra)
print((tmp / "toy.mps").read_text()[:400])

# %% [markdown]
# The file parses back to the same problem. Any MILP solver can take it
# from here; scipy's HiGHS interface is used when available.

# %%
model = read_mps(tmp / "toy.mps")
print("round trip identical:", build_mip(tp).same_problem(model))
try:
    from scipy.optimize import Bounds, LinearConstraint, milp
except ImportError:
    milp = None
if milp is not None:
    kinds = np.array(model.row_types)
    lo = np.where(kinds == "L", -np.inf, model.rhs)
    hi = np.where(kinds == "G", np.inf, model.rhs)
    sol = milp(model.c, constraints=LinearConstraint(model.dense_A(), lo, hi),
               integrality=model.integer.astype(int), bounds=Bounds(model.lb, model.ub))
    write_solution(tmp / "sol.txt", model.var_names, sol.x)
    tm = import_solution(tmp / "sol.txt", tp)
    print(tm.status, tm.achieved.to_dict())
