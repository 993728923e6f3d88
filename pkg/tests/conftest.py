import numpy as np
import pytest

from assortrewire.graph import WeightedDigraph

# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[key])


def double_sum_assortativity(W, a, b):
    """Weighted correlation written edge by edge, with every mean and SD as a
    double sum over cells. Returns None when an SD is zero."""
    W = np.asarray(W, dtype=float)
    n = W.shape[0]
    s = {1: [sum(W[i, j] for j in range(n)) for i in range(n)],
         2: [sum(W[j, i] for j in range(n)) for i in range(n)]}
    tau = sum(W[i, j] for i in range(n) for j in range(n))
    src_mean = sum(W[i, j] * s[a][i] for i in range(n) for j in range(n)) / tau
    trg_mean = sum(W[i, j] * s[b][j] for i in range(n) for j in range(n)) / tau
    src_var = sum(W[i, j] * (s[a][i] - src_mean) ** 2 for i in range(n) for j in range(n)) / tau
    trg_var = sum(W[i, j] * (s[b][j] - trg_mean) ** 2 for i in range(n) for j in range(n)) / tau
    if src_var <= 1e-24 or trg_var <= 1e-24:
        return None
    cov = sum(W[i, j] * (s[a][i] - src_mean) * (s[b][j] - trg_mean) for i in range(n) for j in range(n)) / tau
    return cov / np.sqrt(src_var * trg_var)


def random_matched_pair(rng, n, integer=False, density=0.4, moves=None):
    """``(W, L)`` with equal margins, both nonnegative.

    ``L`` is ``W`` after random four-cell transfers, each at most the smaller
    of the two donor weights, so supports can both shrink and grow.
    """
    mask = rng.random((n, n)) < density
    mask[np.arange(n), rng.integers(0, n, n)] = True
    if integer:
        W = np.where(mask, rng.integers(1, 6, (n, n)), 0).astype(float)
    else:
        W = np.where(mask, rng.gamma(2.0, 1.0, (n, n)), 0.0)
    L = W.copy()
    for _ in range(moves or 3 * n):
        i, k = rng.choice(n, 2, replace=False)
        j, l = rng.choice(n, 2, replace=False)
        cap = min(L[i, j], L[k, l])
        if cap <= 0:
            continue
        dw = float(rng.integers(1, int(cap) + 1)) if integer and cap >= 1 else cap * rng.random()
        if integer and cap < 1:
            continue
        if rng.random() < 0.3:
            dw = cap
        L[i, j] -= dw
        L[k, l] -= dw
        L[i, l] += dw
        L[k, j] += dw
    L[np.abs(L) < 1e-12] = 0.0
    return W, L


@pytest.fixture
def path_graph():
    # edges 1->2 and 2->3, unit weights
    W = np.zeros((3, 3))
    W[0, 1] = W[1, 2] = 1.0
    return WeightedDigraph(W, np.array([1, 2, 3]))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
