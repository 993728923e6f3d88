import itertools

import numpy as np
import pytest

from assortrewire.simplex import (
    INFEASIBLE,
    LinearProgram,
    LPFormatError,
    SolverStallError,
    independent_rows,
    solve_lp,
)


def exhaustive_vertices(A, b, lo, hi, c):
    """Best objective over every basic solution: each choice of ``m`` basic
    columns and each lower/upper pattern of the rest. Exponential; small only."""
    m, n = A.shape
    best = np.inf
    for basis in itertools.combinations(range(n), m):
        B = A[:, basis]
        if abs(np.linalg.det(B)) < 1e-10:
            continue
        rest = [j for j in range(n) if j not in basis]
        for pattern in itertools.product((0, 1), repeat=len(rest)):
            x = np.zeros(n)
            x[rest] = np.where(pattern, hi[rest], lo[rest])
            x[list(basis)] = np.linalg.solve(B, b - A[:, rest] @ x[rest])
            if np.all(x >= lo - 1e-9) and np.all(x <= hi + 1e-9):
                best = min(best, c @ x)
    return best


def basis_vertices(A, b, lo, hi, c):
    """Best objective over bases whose nonbasic columns sit at the bound their
    reduced cost prefers. An optimal basis is of this kind, and every
    candidate checked is a vertex, so the minimum is the LP optimum."""
    m, n = A.shape
    best = np.inf
    for basis in itertools.combinations(range(n), m):
        B = A[:, basis]
        if abs(np.linalg.det(B)) < 1e-10:
            continue
        y = np.linalg.solve(B.T, c[list(basis)])
        d = c - A.T @ y
        rest = np.array([j for j in range(n) if j not in basis])
        x = np.zeros(n)
        x[rest] = np.where(d[rest] >= 0, lo[rest], hi[rest])
        x[list(basis)] = np.linalg.solve(B, b - A[:, rest] @ x[rest])
        if np.all(x >= lo - 1e-9) and np.all(x <= hi + 1e-9):
            best = min(best, c @ x)
    return best


def random_lp(rng, n, m):
    lo = rng.uniform(-1, 0, n)
    hi = lo + rng.uniform(0.5, 2, n)
    A = rng.normal(size=(m, n))
    x0 = rng.uniform(lo, hi)
    return A, A @ x0, lo, hi, rng.normal(size=n)


def test_single_variable():
    res = solve_lp(LinearProgram([-1.0], np.zeros((0, 1)), [], 0, 1))
    assert res.optimal and res.x[0] == 1.0


def test_infeasible_box():
    res = solve_lp(LinearProgram([0.0, 0.0], [[1.0, 1.0]], [1.0], 2, 3))
    assert res.status == INFEASIBLE


def test_format_errors():
    with pytest.raises(LPFormatError):
        LinearProgram([1.0], [[1.0]], [1.0, 2.0], 0, 1)
    with pytest.raises(LPFormatError):
        LinearProgram([1.0], [[1.0]], [1.0], 0, np.inf)


@pytest.mark.parametrize("rule", ["auto", "bland"])
def test_random_20_variable_lps(rule):
    rng = np.random.default_rng(2024)
    for _ in range(15):
        A, b, lo, hi, c = random_lp(rng, 20, 3)
        res = solve_lp(LinearProgram(c, A, b, lo, hi), rule=rule)
        assert res.optimal
        assert res.objective == pytest.approx(basis_vertices(A, b, lo, hi, c), abs=1e-8)
        np.testing.assert_allclose(A @ res.x, b, atol=1e-8)


def test_small_lps_exhaustive():
    rng = np.random.default_rng(7)
    for _ in range(20):
        A, b, lo, hi, c = random_lp(rng, 8, 2)
        res = solve_lp(LinearProgram(c, A, b, lo, hi))
        assert res.objective == pytest.approx(exhaustive_vertices(A, b, lo, hi, c), abs=1e-8)


def test_inequality_rows_match_slack_form():
    rng = np.random.default_rng(3)
    for _ in range(10):
        A, b, lo, hi, c = random_lp(rng, 6, 1)
        G = rng.normal(size=(2, 6))
        h = G @ rng.uniform(lo, hi) + 0.1
        res = solve_lp(LinearProgram(c, A, b, lo, hi, G, h))
        # same program with explicit slacks
        span = h - np.minimum(G * lo, G * hi).sum(axis=1)
        A2 = np.block([[A, np.zeros((1, 2))], [G, np.eye(2)]])
        lo2, hi2 = np.concatenate([lo, [0, 0]]), np.concatenate([hi, span])
        c2 = np.concatenate([c, [0, 0]])
        best = exhaustive_vertices(A2, np.concatenate([b, h]), lo2, hi2, c2)
        assert res.objective == pytest.approx(best, abs=1e-8)
        assert np.all(G @ res.x <= h + 1e-8)


def test_redundant_rows():
    A = np.array([[1.0, 1, 0], [0, 1, 1], [1, 2, 1]])
    res = solve_lp(LinearProgram([1.0, 0, 1], A, [1, 1, 2], 0, 1))
    assert res.optimal and res.objective == pytest.approx(0.0)
    bad = solve_lp(LinearProgram([1.0, 0, 1], A, [1, 1, 3], 0, 1))
    assert bad.status == INFEASIBLE


def test_independent_rows_mask():
    A = np.array([[1.0, 0], [2, 0], [0, 1]])
    mask, ok = independent_rows(A, np.array([1.0, 2, 3]))
    assert mask.tolist() == [True, False, True] and ok
    assert not independent_rows(A, np.array([1.0, 5, 3]))[1]


def test_iteration_cap():
    rng = np.random.default_rng(1)
    A, b, lo, hi, c = random_lp(rng, 20, 3)
    with pytest.raises(SolverStallError):
        solve_lp(LinearProgram(c, A, b, lo, hi), max_iter=1)


def test_degenerate_transportation():
    # 3x3 transportation problem with many ties
    supply = np.array([1.0, 1, 1])
    demand = np.array([1.0, 1, 1])
    A = np.zeros((6, 9))
    for i in range(3):
        A[i, 3 * i:3 * i + 3] = 1
        A[3 + i, i::3] = 1
    cost = np.ones(9)
    for rule in ("auto", "bland"):
        res = solve_lp(LinearProgram(cost, A, np.concatenate([supply, demand]), 0, 1), rule=rule)
        assert res.objective == pytest.approx(3.0)


def test_deterministic():
    rng = np.random.default_rng(5)
    A, b, lo, hi, c = random_lp(rng, 20, 4)
    x1 = solve_lp(LinearProgram(c, A, b, lo, hi)).x
    x2 = solve_lp(LinearProgram(c, A, b, lo, hi)).x
    assert np.array_equal(x1, x2)
