"""Random weighted digraph models: Erdos-Renyi with self-loops and a
directed preferential-attachment model with strength offsets.

All randomness goes through ``numpy.random.Generator`` backed by PCG64
(``numpy.random.default_rng(seed)``), so a seed and a numpy version pin a
sample exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import WeightedDigraph, from_edge_list, remove_isolated_nodes


class GeneratorError(ValueError):
    """Invalid generator configuration or a degenerate sampling state."""


def make_rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def gamma_sampler(shape: float, scale: float, rng: np.random.Generator, size=None):
    """Gamma draws with mean ``shape * scale``."""
    if not (shape > 0 and scale > 0):
        raise GeneratorError(f"gamma parameters must be positive, got shape={shape}, scale={scale}")
    return rng.gamma(shape, scale, size=size)


@dataclass(frozen=True)
class GammaWeights:
    shape: float = 5.0
    scale: float = 0.2

    def __post_init__(self):
        if not (self.shape > 0 and self.scale > 0):
            raise GeneratorError(f"gamma parameters must be positive, got {self}")

    def sample(self, rng, size=None):
        return gamma_sampler(self.shape, self.scale, rng, size)

    def to_dict(self):
        return {"law": "gamma", "shape": self.shape, "scale": self.scale}


@dataclass(frozen=True)
class ConstantWeights:
    value: float = 1.0

    def __post_init__(self):
        if not self.value > 0:
            raise GeneratorError(f"constant weight must be positive, got {self.value}")

    def sample(self, rng, size=None):
        if size is None:
            return self.value
        return np.full(size, self.value)

    def to_dict(self):
        return {"law": "constant", "value": self.value}


@dataclass(frozen=True)
class ErConfig:
    n: int
    p: float
    weight_shape: float = 5.0
    weight_scale: float = 0.2
    seed: int | None = 0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise GeneratorError(f"n must be a nonnegative integer, got {self.n}")
        if not 0 <= self.p <= 1:
            raise GeneratorError(f"p must lie in [0, 1], got {self.p}")
        GammaWeights(self.weight_shape, self.weight_scale)

    def to_dict(self):
        return {
            "model": "er",
            "n": self.n,
            "p": self.p,
            "weight_shape": self.weight_shape,
            "weight_scale": self.weight_scale,
            "seed": self.seed,
        }


def erdos_renyi(cfg: ErConfig) -> WeightedDigraph:
    """Directed ER graph with self-loops and gamma weights.

    Every ordered pair ``(i, j)``, ``i == j`` included, gets an edge
    independently with probability ``p``. Isolated nodes are removed; node
    labels are ``0..n-1`` of the survivors.
    """
    rng = make_rng(cfg.seed)
    n = cfg.n
    present = rng.random((n, n)) < cfg.p
    weights = gamma_sampler(cfg.weight_shape, cfg.weight_scale, rng, size=(n, n))
    return remove_isolated_nodes(WeightedDigraph(np.where(present, weights, 0.0)))


@dataclass(frozen=True)
class PaConfig:
    """Directed PA model.

    Each step adds one weighted edge: with probability ``alpha`` from a new
    node to an existing one, ``beta`` between two existing nodes, ``gamma``
    from an existing node to a new one. Existing sources are drawn with
    probability proportional to ``s_out + delta1``, existing targets to
    ``s_in + delta2``.
    """

    steps: int
    alpha: float = 0.15
    beta: float = 0.7
    gamma: float = 0.15
    delta1: float = 1.0
    delta2: float = 1.0
    weights: GammaWeights | ConstantWeights = field(default_factory=GammaWeights)
    seed_edges: tuple = ((1, 2, 1.0),)
    seed: int | None = 0

    def __post_init__(self):
        if int(self.steps) != self.steps or self.steps < 0:
            raise GeneratorError(f"steps must be a nonnegative integer, got {self.steps}")
        probs = (self.alpha, self.beta, self.gamma)
        if any(not p >= 0 for p in probs):
            raise GeneratorError(f"scenario probabilities must be nonnegative, got {probs}")
        if abs(sum(probs) - 1.0) > 1e-12:
            raise GeneratorError(f"alpha + beta + gamma must equal 1, got {sum(probs)!r}")
        if not (self.delta1 >= 0 and self.delta2 >= 0):
            raise GeneratorError("delta offsets must be nonnegative")
        if not self.seed_edges:
            raise GeneratorError("seed graph must contain at least one edge")

    @classmethod
    def from_beta(cls, steps, beta, **kwargs) -> "PaConfig":
        """Config with ``alpha = gamma = (1 - beta) / 2``."""
        side = (1.0 - beta) / 2.0
        return cls(steps=steps, alpha=side, beta=1.0 - 2.0 * side, gamma=side, **kwargs)

    def to_dict(self):
        return {
            "model": "pa",
            "steps": self.steps,
            "alpha": self.alpha,
            "beta": self.beta,
            "gamma": self.gamma,
            "delta1": self.delta1,
            "delta2": self.delta2,
            "weights": self.weights.to_dict(),
            "seed_edges": [list(e) for e in self.seed_edges],
            "seed": self.seed,
        }


@dataclass
class PaHistory:
    """Per-step scenario codes (0 alpha, 1 beta, 2 gamma) and drawn weights."""

    scenarios: np.ndarray
    weights: np.ndarray


def _draw(mass: np.ndarray, rng) -> int:
    total = mass.sum()
    if not total > 0:
        raise GeneratorError("sampling mass is zero: all strengths and delta offsets vanish")
    u = rng.random() * total
    idx = int(np.searchsorted(np.cumsum(mass), u, side="right"))
    return min(idx, mass.size - 1)


def preferential_attachment(cfg: PaConfig, record: bool = False):
    """Grow a weighted directed PA graph.

    Repeated pairs accumulate weight onto the existing edge. New nodes get
    labels ``max(seed label) + 1, +2, ...`` in order of arrival. With
    ``record=True`` a ``PaHistory`` is returned alongside the graph.
    """
    rng = make_rng(cfg.seed)
    seed_graph = from_edge_list(cfg.seed_edges)
    n0 = seed_graph.n
    cap = n0 + cfg.steps
    s_out = np.zeros(cap)
    s_in = np.zeros(cap)
    s_out[:n0] = seed_graph.out_strength
    s_in[:n0] = seed_graph.in_strength
    edges: dict[tuple[int, int], float] = {}
    for i, j in zip(*np.nonzero(seed_graph.W)):
        edges[(int(i), int(j))] = float(seed_graph.W[i, j])

    n = n0
    scenarios = np.empty(cfg.steps, dtype=np.int8)
    drawn = np.empty(cfg.steps)
    cut_alpha = cfg.alpha
    cut_beta = cfg.alpha + cfg.beta
    for t in range(cfg.steps):
        u = rng.random()
        if u < cut_alpha:
            kind = 0
            j = _draw(s_in[:n] + cfg.delta2, rng)
            i = n
            n += 1
        elif u < cut_beta:
            kind = 1
            i = _draw(s_out[:n] + cfg.delta1, rng)
            j = _draw(s_in[:n] + cfg.delta2, rng)
        else:
            kind = 2
            i = _draw(s_out[:n] + cfg.delta1, rng)
            j = n
            n += 1
        w = float(cfg.weights.sample(rng))
        edges[(i, j)] = edges.get((i, j), 0.0) + w
        s_out[i] += w
        s_in[j] += w
        scenarios[t] = kind
        drawn[t] = w

    W = np.zeros((n, n))
    for (i, j), w in edges.items():
        W[i, j] = w
    first_new = int(seed_graph.labels.max()) + 1
    labels = np.concatenate([seed_graph.labels, np.arange(first_new, first_new + n - n0)])
    g = WeightedDigraph(W, labels)
    if record:
        return g, PaHistory(scenarios, drawn)
    return g
