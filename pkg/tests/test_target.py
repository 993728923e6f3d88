import numpy as np
import pytest

from assortrewire.assortativity import PAIRS, assortativity, assortativity_all
from assortrewire.generators import ErConfig, erdos_renyi
from assortrewire.graph import WeightedDigraph, from_edge_list, nnz, strength_profile
from assortrewire.rewire import sweep
from assortrewire.target import (
    FREE,
    INFEASIBLE,
    L1_TO_W,
    OPTIMAL,
    ZERO,
    ConfigurationError,
    TargetProblem,
    TargetVerificationError,
    assortativity_bounds,
    build_problem,
    check_target,
    default_kappa,
    linearized_assortativity_constraint,
    parse_objective,
    solve_target,
    verify_target,
)

from conftest import random_matched_pair


def test_constraint_holds_at_w():
    g = erdos_renyi(ErConfig(15, 0.3, seed=1))
    p = strength_profile(g)
    for a, b in PAIRS:
        C, rhs = linearized_assortativity_constraint(p, a, b, assortativity(g, a, b))
        assert (C * g.W).sum() == pytest.approx(rhs, abs=1e-12)
        C0, rhs0 = linearized_assortativity_constraint(p, a, b, 0.0)
        assert rhs0 == 0.0


def test_constraint_residual_is_scaled_gap():
    rng = np.random.default_rng(5)
    W, L = random_matched_pair(rng, 6)
    g = WeightedDigraph(W)
    p = strength_profile(g)
    r_l = assortativity_all(WeightedDigraph(L))
    for (a, b), rl in zip(PAIRS, r_l):
        r_star = 0.25
        C, rhs = linearized_assortativity_constraint(p, a, b, r_star)
        denom = p.tau * p.src_sd[a - 1] * p.trg_sd[b - 1]
        assert (C * L).sum() - rhs == pytest.approx((rl - r_star) * denom, abs=1e-10)


def _triangle():
    return from_edge_list([(1, 2, 1.0), (2, 3, 2.0), (3, 1, 3.0)])


def test_problem_shape_three_edges():
    g = _triangle()
    lp = build_problem(TargetProblem(g, [0.1, 0.1, 0.1, 0.1]))
    assert lp.n_vars == 3
    assert lp.n_eq == 2 + 3 + 4
    assert [r for r in lp.row_names if r.startswith("R_")] == ["R_11", "R_12", "R_21", "R_22"]


def test_kappa_excluding_weights():
    g = _triangle()
    with pytest.raises(ConfigurationError):
        TargetProblem(g, None, 1.5, 10.0)
    lo, hi = default_kappa(g)
    assert lo == 0.5 and hi == 6.0


def test_free_support_not_solved_in_repo():
    with pytest.raises(ConfigurationError):
        build_problem(TargetProblem(_triangle(), None, support_mode=FREE))


def test_parse_objective():
    assert parse_objective("zero") == ZERO
    assert parse_objective("l1") == L1_TO_W
    obj = parse_objective("max:2,1")
    assert (obj.kind, obj.a, obj.b) == ("max", 2, 1)
    with pytest.raises(ValueError):
        parse_objective("max:3,1")


def test_own_quad_under_l1_returns_w():
    g = erdos_renyi(ErConfig(20, 0.2, seed=3))
    res = solve_target(TargetProblem(g, assortativity_all(g), objective=L1_TO_W))
    assert res.status == OPTIMAL
    assert res.objective_value == pytest.approx(0.0, abs=1e-9)
    np.testing.assert_allclose(res.Lambda, g.W, atol=1e-9)


def test_er_targets_reached():
    # seed 5 is one where the four targets are jointly feasible
    g = erdos_renyi(ErConfig(50, 0.1, seed=5))
    targets = [0.3, 0.3, -0.3, -0.3]
    res = solve_target(TargetProblem(g, targets))
    assert res.status == OPTIMAL
    np.testing.assert_allclose(res.achieved.to_array(), targets, atol=1e-6)
    np.testing.assert_allclose(res.Lambda.sum(1), g.W.sum(1), atol=1e-7)
    np.testing.assert_allclose(res.Lambda.sum(0), g.W.sum(0), atol=1e-7)
    assert nnz(res.Lambda) == nnz(g)


def test_beyond_bound_is_infeasible():
    g = erdos_renyi(ErConfig(30, 0.15, seed=2))
    lo, hi = assortativity_bounds(g, 1, 2)
    if hi + 0.1 <= 1.0:
        res = solve_target(TargetProblem(g, {(1, 2): hi + 0.1}))
        assert res.status == INFEASIBLE and res.Lambda is None
    res = solve_target(TargetProblem(g, {(1, 2): lo - 0.1}))
    assert res.status == INFEASIBLE


def test_diagonal_support_collapses_bounds():
    g = WeightedDigraph(np.diag([1.0, 2.0, 3.0, 5.0]))
    for a, b in PAIRS:
        lo, hi = assortativity_bounds(g, a, b)
        r = assortativity(g, a, b)
        assert lo == pytest.approx(r, abs=1e-9) and hi == pytest.approx(r, abs=1e-9)


def test_er_bounds_bracket():
    g = erdos_renyi(ErConfig(50, 0.2, seed=8))
    for a, b in PAIRS:
        lo, hi = assortativity_bounds(g, a, b)
        assert lo < 0 < hi
        assert lo - 1e-9 <= assortativity(g, a, b) <= hi + 1e-9


def test_l1_never_worse_than_zero():
    g = erdos_renyi(ErConfig(30, 0.15, seed=4))
    targets = [0.1, 0.1, -0.1, -0.1]
    zero = solve_target(TargetProblem(g, targets, objective=ZERO))
    l1 = solve_target(TargetProblem(g, targets, objective=L1_TO_W))
    assert np.abs(g.W - l1.Lambda).sum() <= np.abs(g.W - zero.Lambda).sum() + 1e-9
    assert l1.objective_value == pytest.approx(np.abs(g.W - l1.Lambda).sum(), abs=1e-7)


def test_solution_sweeps_to_target():
    g = erdos_renyi(ErConfig(25, 0.2, seed=6))
    res = solve_target(TargetProblem(g, [0.05, 0.05, -0.05, -0.05]))
    rec = sweep(g, res.Lambda)
    assert len(rec) > 0


@pytest.mark.parametrize("mutate, condition", [
    (lambda L: L.__setitem__((0, 0), -1.0), "nonnegativity"),
    (lambda L: L.__setitem__((0, 1), L[0, 1] + 1.0), "margins"),
])
def test_checker_names_condition(mutate, condition):
    g = _triangle()
    L = g.W.copy()
    mutate(L)
    bad = check_target(g.W, L)
    assert bad and bad[0][0] == condition
    with pytest.raises(TargetVerificationError) as exc:
        verify_target(g.W, L)
    assert exc.value.condition == condition


def test_checker_sparsity_and_bounds():
    W = np.array([[1.0, 1.0], [1.0, 1.0]])
    L = np.array([[2.0, 0.0], [0.0, 2.0]])
    assert check_target(W, L)[0][0] == "sparsity"
    assert check_target(W, W, kappa=(1.5, 3.0))[0][0] == "weight-bounds"
    assert check_target(W, W) == []


def test_joint_infeasibility_agrees_with_highs():
    from scipy.optimize import linprog

    # each target lies inside its own bound, but the four together do not fit
    g = erdos_renyi(ErConfig(50, 0.1, seed=1))
    targets = [0.3, 0.3, -0.3, -0.3]
    for (a, b), t in zip(PAIRS, targets):
        lo, hi = assortativity_bounds(g, a, b)
        assert 0.8 * lo < t < 0.8 * hi
    tp = TargetProblem(g, targets)
    assert solve_target(tp).status == INFEASIBLE
    lp = build_problem(tp)
    ref = linprog(lp.c, A_eq=lp.A_eq, b_eq=lp.b_eq, bounds=list(zip(lp.lb, lp.ub)), method="highs")
    assert ref.status == 2
