import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from assortrewire.assortativity import (
    PAIRS,
    AssortativityQuad,
    UndefinedCoefficientError,
    assortativity,
    assortativity_all,
    assortativity_delta,
    quad_deltas,
)
from assortrewire.generators import ErConfig, PaConfig, erdos_renyi, preferential_attachment
from assortrewire.graph import RewiringStep, WeightedDigraph, from_edge_list, strength_profile, transfer

from conftest import double_sum_assortativity


def test_path_in_out_is_minus_one(path_graph):
    assert assortativity(path_graph, 2, 1) == pytest.approx(-1.0, abs=1e-12)
    assert double_sum_assortativity(path_graph.W, 2, 1) == pytest.approx(-1.0, abs=1e-12)


def test_path_out_out_undefined(path_graph):
    with pytest.raises(UndefinedCoefficientError) as exc:
        assortativity(path_graph, 1, 1)
    assert "source out-strength" in str(exc.value)
    assert assortativity_all(path_graph).r11 is None


def test_bad_pair(path_graph):
    with pytest.raises(ValueError):
        assortativity(path_graph, 3, 1)


def test_single_edge_all_undefined():
    q = assortativity_all(from_edge_list([(1, 2, 1.0)]))
    assert list(q) == [None] * 4
    assert q.to_dict()["r22"] == "undefined"


def test_quad_matches_pairwise(rng):
    g = erdos_renyi(ErConfig(30, 0.15, seed=1))
    q = assortativity_all(g)
    for (a, b), v in zip(PAIRS, q):
        assert v == assortativity(g, a, b)


def test_symmetric_graph_has_equal_coefficients(rng):
    A = np.where(rng.random((12, 12)) < 0.4, rng.gamma(2, 1, (12, 12)), 0)
    W = A + A.T
    q = assortativity_all(WeightedDigraph(W)).to_array()
    np.testing.assert_allclose(q, q[0], atol=1e-12)


def test_pa_sample_against_double_sum():
    g = preferential_attachment(PaConfig.from_beta(300, 0.7, seed=3))
    q = assortativity_all(g)
    for (a, b), v in zip(PAIRS, q):
        assert v == pytest.approx(double_sum_assortativity(g.W, a, b), abs=1e-10)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(3, 9))
def test_within_unit_interval(seed, n):
    rng = np.random.default_rng(seed)
    W = np.where(rng.random((n, n)) < 0.5, rng.gamma(1.5, 1, (n, n)), 0)
    if W.sum() == 0:
        W[0, 1] = 1.0
    for v in assortativity_all(WeightedDigraph(W)):
        if v is not None:
            assert -1 - 1e-12 <= v <= 1 + 1e-12


def test_quad_helpers():
    q = AssortativityQuad.from_values([0.1, "undefined", None, -0.2])
    assert q.get(1, 1) == 0.1 and q.r12 is None and not q.defined
    with pytest.raises(ValueError):
        q.to_array()


def test_delta_zero_and_collapsed(path_graph):
    g = erdos_renyi(ErConfig(20, 0.3, seed=2))
    p = strength_profile(g)
    assert assortativity_delta(p, (0, 1, 2, 3, 0.0), 2, 2) == 0.0
    # i == k or j == l cancels
    assert assortativity_delta(p, (0, 1, 0, 3, 0.5), 1, 2) == 0.0
    assert assortativity_delta(p, (0, 1, 2, 1, 0.5), 1, 2) == 0.0


def test_delta_matches_recompute_on_single_step():
    g = erdos_renyi(ErConfig(20, 0.3, seed=5))
    p = strength_profile(g)
    i, j = np.argwhere(g.W > 0)[0]
    k, l = np.argwhere(g.W > 0)[-1]
    dw = 0.5 * min(g.W[i, j], g.W[k, l])
    step = RewiringStep(g.labels[i].item(), g.labels[j].item(), g.labels[k].item(), g.labels[l].item(), dw)
    index = {lab: n for n, lab in enumerate(g.labels.tolist())}
    W = g.W.copy()
    transfer(W, i, j, k, l, dw)
    after = assortativity_all(WeightedDigraph(W, g.labels))
    for (a, b), r0, r1 in zip(PAIRS, assortativity_all(g), after):
        assert r0 + assortativity_delta(p, step, a, b, index=index) == pytest.approx(r1, abs=1e-12)


def test_incremental_200_random_steps():
    g = erdos_renyi(ErConfig(40, 0.15, seed=7))
    rng = np.random.default_rng(7)
    p = strength_profile(g)
    W = g.W.copy()
    r = assortativity_all(g).to_array()
    n = g.n
    done = 0
    while done < 200:
        i, k = rng.choice(n, 2, replace=False)
        j, l = rng.choice(n, 2, replace=False)
        cap = min(W[i, j], W[k, l])
        if cap <= 0:
            continue
        dw = cap * rng.random()
        r = r + quad_deltas(p, [i], [j], [k], [l], [dw])[0]
        transfer(W, i, j, k, l, dw)
        done += 1
    full = assortativity_all(WeightedDigraph(W)).to_array()
    np.testing.assert_allclose(r, full, atol=1e-9)


def test_er_coefficients_near_zero():
    means = np.mean([assortativity_all(erdos_renyi(ErConfig(200, 0.1, seed=s))).to_array()
                     for s in range(10)], axis=0)
    assert np.all(np.abs(means) < 0.05)
