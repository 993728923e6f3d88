import itertools

import numpy as np
import pytest

from assortrewire.assortativity import covariance_weights
from assortrewire.graph import WeightedDigraph, nnz, strength_profile, transfer
from assortrewire.mps import (
    MpsFormatError,
    build_mip,
    export_mip,
    import_solution,
    read_mps,
    write_solution,
)
from assortrewire.simplex import LinearProgram, solve_lp
from assortrewire.target import (
    EXPORTED,
    FEASIBLE,
    FIXED,
    FREE,
    L1_TO_W,
    TargetProblem,
    TargetVerificationError,
    bound_max,
)

W4 = np.array([[0, 2, 1, 0], [1, 0, 0, 3], [0, 1, 0, 1], [2, 0, 1, 0]], dtype=float)
KAPPA = (0.5, 4.0)


def enumerate_supports(W, c, kappa):
    """Min of ``c . L`` over every support with ``nnz(W)`` cells, one LP each."""
    n = W.shape[0]
    best, arg = np.inf, None
    for cells in itertools.combinations(range(n * n), nnz(W)):
        rows, cols = np.divmod(np.array(cells), n)
        A = np.vstack([[(rows == i) * 1.0 for i in range(n)], [(cols == j) * 1.0 for j in range(n)]])
        b = np.concatenate([W.sum(1), W.sum(0)])
        res = solve_lp(LinearProgram(c[rows, cols], A, b, kappa[0], kappa[1]))
        if res.optimal and res.objective < best:
            best = res.objective
            arg = np.zeros_like(W)
            arg[rows, cols] = res.x
    return best, arg


def scipy_solve(model):
    from scipy.optimize import Bounds, LinearConstraint, milp

    types = np.array(model.row_types)
    lo = np.where(types == "L", -np.inf, model.rhs)
    hi = np.where(types == "G", np.inf, model.rhs)
    res = milp(model.c, constraints=LinearConstraint(model.dense_A(), lo, hi),
               integrality=model.integer.astype(int), bounds=Bounds(model.lb, model.ub))
    assert res.status == 0
    return res


def test_round_trip(tmp_path):
    tp = TargetProblem(WeightedDigraph(W4), [0.1, None, -0.2, None], *KAPPA, L1_TO_W, FREE)
    path = tmp_path / "p.mps"
    out = export_mip(tp, path)
    assert out.status == EXPORTED
    parsed = read_mps(path)
    assert build_mip(tp).same_problem(parsed)
    text = path.read_text()
    assert "'INTORG'" in text and "'INTEND'" in text and text.rstrip().endswith("ENDATA")


def test_export_needs_free_support(tmp_path):
    tp = TargetProblem(WeightedDigraph(W4), None, *KAPPA, support_mode=FIXED)
    with pytest.raises(ValueError):
        export_mip(tp, tmp_path / "p.mps")


def test_toy_milp_matches_enumeration(tmp_path):
    g = WeightedDigraph(W4)
    tp = TargetProblem(g, None, *KAPPA, bound_max(1, 1), FREE)
    export_mip(tp, tmp_path / "toy.mps")
    model = read_mps(tmp_path / "toy.mps")
    res = scipy_solve(model)
    write_solution(tmp_path / "sol.txt", model.var_names, res.x)
    tm = import_solution(tmp_path / "sol.txt", tp)
    assert tm.status == FEASIBLE
    C = covariance_weights(strength_profile(g), 1, 1)
    best, _ = enumerate_supports(W4, -C, KAPPA)
    assert tm.objective_value == pytest.approx(best, abs=1e-7)
    assert nnz(tm.Lambda) == nnz(g)


def test_solution_with_wrong_edge_count_rejected(tmp_path):
    g = WeightedDigraph(W4)
    tp = TargetProblem(g, None, *KAPPA, support_mode=FREE)
    # one full transfer: margins kept, edge count goes up by one
    L = W4.copy()
    transfer(L, 0, 1, 1, 3, 2.0)
    lab = g.labels.tolist()
    names = [f"L_{lab[i]}_{lab[j]}" for i in range(4) for j in range(4)]
    path = tmp_path / "bad.txt"
    path.write_text("# hand-written\n")
    with open(path, "a") as fh:
        for name, v in zip(names, L.ravel()):
            fh.write(f"{name} {v}\n")
    with pytest.raises(TargetVerificationError) as exc:
        import_solution(path, tp)
    assert exc.value.condition == "sparsity"


def test_unknown_variable(tmp_path):
    tp = TargetProblem(WeightedDigraph(W4), None, *KAPPA, support_mode=FREE)
    path = tmp_path / "sol.txt"
    path.write_text("L_9_9 1.0\n")
    with pytest.raises(MpsFormatError):
        import_solution(path, tp)


def test_bad_mps(tmp_path):
    path = tmp_path / "bad.mps"
    path.write_text("NAME x\nWHATEVER\nENDATA\n")
    with pytest.raises(MpsFormatError):
        read_mps(path)
