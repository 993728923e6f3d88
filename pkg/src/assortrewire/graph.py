"""Weighted directed graphs, strength profiles and edge-list persistence.

Graphs are stored as dense ``n x n`` float64 adjacency matrices. ``W[i, j]``
is the weight of the edge from node ``i`` to node ``j``; self-loops live on
the diagonal and a zero entry means the edge is absent.
"""
from __future__ import annotations

import csv
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

# Entries at or below this magnitude count as absent once arithmetic is involved.
ZERO_WEIGHT = 1e-9


class GraphError(ValueError):
    """Base class for invalid graph input."""


class EdgeListError(GraphError):
    """A malformed or invalid row in an edge list."""

    def __init__(self, message, row=None, unit="row"):
        self.row = row
        if row is not None:
            message = f"{unit} {row}: {message}"
        super().__init__(message)


class NegativeWeightError(GraphError):
    """A rewiring step would overdraw an edge weight."""

    def __init__(self, message, cell=None):
        self.cell = cell
        super().__init__(message)


class UndefinedProfileError(GraphError):
    """Strength statistics requested for a graph with no weight."""


@dataclass(frozen=True, eq=False)
class WeightedDigraph:
    """Dense weighted digraph with traceable node labels.

    Parameters
    ----------
    W : (n, n) array_like
        Nonnegative adjacency matrix.
    labels : sequence of int, optional
        Original node identifiers, ``0..n-1`` by default.
    """

    W: np.ndarray
    labels: np.ndarray = None

    def __post_init__(self):
        W = np.array(self.W, dtype=np.float64, copy=True)
        if W.ndim != 2 or W.shape[0] != W.shape[1]:
            raise GraphError(f"adjacency must be square, got shape {W.shape}")
        if not np.all(np.isfinite(W)):
            raise GraphError("adjacency contains non-finite entries")
        if np.any(W < 0):
            i, j = np.argwhere(W < 0)[0]
            raise GraphError(f"negative weight {W[i, j]} at ({i}, {j})")
        n = W.shape[0]
        labels = np.arange(n) if self.labels is None else np.asarray(self.labels)
        if labels.shape != (n,):
            raise GraphError(f"expected {n} labels, got shape {labels.shape}")
        if len(np.unique(labels)) != n:
            raise GraphError("node labels must be unique")
        W.flags.writeable = False
        labels = labels.copy()
        labels.flags.writeable = False
        object.__setattr__(self, "W", W)
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return self.W.shape[0]

    @property
    def out_strength(self) -> np.ndarray:
        return self.W.sum(axis=1)

    @property
    def in_strength(self) -> np.ndarray:
        return self.W.sum(axis=0)

    @property
    def tau(self) -> float:
        return float(self.W.sum())

    def support(self) -> np.ndarray:
        """Boolean mask of cells carrying an edge."""
        return self.W > ZERO_WEIGHT

    def index_of(self, label) -> int:
        hits = np.flatnonzero(self.labels == label)
        if hits.size == 0:
            raise KeyError(f"no node labelled {label!r}")
        return int(hits[0])

    def edges(self):
        """Yield ``(src_label, dst_label, weight)`` sorted by (src, dst)."""
        order = np.argsort(self.labels, kind="stable")
        W = self.W[np.ix_(order, order)]
        lab = self.labels[order]
        for i, j in zip(*np.nonzero(W > ZERO_WEIGHT)):
            yield lab[i].item(), lab[j].item(), float(W[i, j])

    def to_edge_list(self) -> list[tuple]:
        return list(self.edges())

    def with_weights(self, W) -> "WeightedDigraph":
        """Same node set, different adjacency."""
        return WeightedDigraph(W, self.labels)

    def __repr__(self):
        return f"WeightedDigraph(n={self.n}, nnz={nnz(self)}, tau={self.tau:.6g})"


@dataclass(frozen=True, eq=False)
class RewiringStep:
    """Move ``dw`` from edges i->j and k->l onto i->l and k->j.

    Indices are node labels of the graph the step applies to.
    """

    i: int
    j: int
    k: int
    l: int
    dw: float

    def __post_init__(self):
        if not self.dw >= 0:
            raise ValueError(f"step weight must be nonnegative, got {self.dw}")
        if self.i == self.k or self.j == self.l:
            raise ValueError(
                f"degenerate step ({self.i}, {self.j}, {self.k}, {self.l}): "
                "sources and targets must differ"
            )

    def as_tuple(self):
        return (self.i, self.j, self.k, self.l, self.dw)


@dataclass(frozen=True, eq=False)
class StrengthProfile:
    """Out/in strengths and their edge-weighted moments.

    ``src_mean[a - 1]`` and ``src_sd[a - 1]`` describe the a-type strength
    of edge sources (a = 1 out, a = 2 in) weighted by out-strength;
    ``trg_mean`` / ``trg_sd`` do the same for targets weighted by
    in-strength.
    """

    s_out: np.ndarray
    s_in: np.ndarray
    tau: float
    src_mean: np.ndarray
    trg_mean: np.ndarray
    src_sd: np.ndarray
    trg_sd: np.ndarray
    _dev_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def strength(self, kind: int) -> np.ndarray:
        if kind == 1:
            return self.s_out
        if kind == 2:
            return self.s_in
        raise ValueError(f"strength type must be 1 (out) or 2 (in), got {kind!r}")

    def src_deviation(self, a: int) -> np.ndarray:
        """``s^(a) - mean_src^(a)`` for every node."""
        key = ("src", a)
        if key not in self._dev_cache:
            self._dev_cache[key] = self.strength(a) - self.src_mean[a - 1]
        return self._dev_cache[key]

    def trg_deviation(self, b: int) -> np.ndarray:
        key = ("trg", b)
        if key not in self._dev_cache:
            self._dev_cache[key] = self.strength(b) - self.trg_mean[b - 1]
        return self._dev_cache[key]


def strength_profile(g: WeightedDigraph) -> StrengthProfile:
    """Compute strengths, total weight and weighted means/SDs of ``g``.

    Uses the node-level sums, e.g. ``mean_src^(a) = sum_i s_out_i s_i^(a) / tau``,
    which equal the edge double sums because ``sum_j w_ij = s_out_i``.

    Raises
    ------
    UndefinedProfileError
        If the graph carries no weight.
    """
    s_out = g.out_strength
    s_in = g.in_strength
    tau = float(s_out.sum())
    if not tau > 0:
        raise UndefinedProfileError("strength profile is undefined for a graph with zero total weight")
    strengths = (s_out, s_in)
    src_mean = np.array([s_out @ s / tau for s in strengths])
    trg_mean = np.array([s_in @ s / tau for s in strengths])
    src_sd = np.array(
        [np.sqrt(max(s_out @ (s - m) ** 2 / tau, 0.0)) for s, m in zip(strengths, src_mean)]
    )
    trg_sd = np.array(
        [np.sqrt(max(s_in @ (s - m) ** 2 / tau, 0.0)) for s, m in zip(strengths, trg_mean)]
    )
    for arr in (s_out, s_in, src_mean, trg_mean, src_sd, trg_sd):
        arr.flags.writeable = False
    return StrengthProfile(s_out, s_in, tau, src_mean, trg_mean, src_sd, trg_sd)


def nnz(g) -> int:
    """Number of edges, i.e. entries above ``ZERO_WEIGHT``."""
    W = g.W if isinstance(g, WeightedDigraph) else np.asarray(g)
    return int(np.count_nonzero(W > ZERO_WEIGHT))


def remove_isolated_nodes(g: WeightedDigraph) -> WeightedDigraph:
    """Drop nodes with zero in- and out-strength, keeping labels of the rest."""
    keep = (g.out_strength + g.in_strength) > 0
    if keep.all():
        return g
    return WeightedDigraph(g.W[np.ix_(keep, keep)], g.labels[keep])


def transfer(W: np.ndarray, i: int, j: int, k: int, l: int, dw: float) -> None:
    """Apply a rewiring move in place on matrix indices (no checks)."""
    W[i, j] -= dw
    W[k, l] -= dw
    W[i, l] += dw
    W[k, j] += dw


def apply_step(g: WeightedDigraph, step: RewiringStep, tol: float = ZERO_WEIGHT) -> WeightedDigraph:
    """Return a copy of ``g`` with ``step`` applied.

    Row and column sums are unchanged. Raises ``NegativeWeightError`` naming
    the offending cell when either donor edge holds less than ``dw``.
    """
    i, j, k, l = (g.index_of(x) for x in (step.i, step.j, step.k, step.l))
    for (r, c), lab in (((i, j), (step.i, step.j)), ((k, l), (step.k, step.l))):
        if g.W[r, c] - step.dw < -tol:
            raise NegativeWeightError(
                f"edge {lab[0]}->{lab[1]} holds {g.W[r, c]!r} < dw={step.dw!r}", cell=lab
            )
    W = g.W.copy()
    transfer(W, i, j, k, l, step.dw)
    # clamp round-off below zero
    np.maximum(W, 0.0, out=W)
    return WeightedDigraph(W, g.labels)


def from_edge_list(rows: Iterable[Sequence]) -> WeightedDigraph:
    """Build a graph from ``(src, dst, weight)`` rows.

    Node ids must be nonnegative integers; duplicate pairs are summed.
    Labels are the sorted distinct ids. Rows are numbered from 1 in errors.
    """
    parsed = []
    for num, row in enumerate(rows, start=1):
        try:
            src, dst, w = row
        except (TypeError, ValueError):
            raise EdgeListError(f"expected (src, dst, weight), got {row!r}", row=num) from None
        try:
            src_i, dst_i, wf = _as_node(src), _as_node(dst), float(w)
        except (TypeError, ValueError) as exc:
            raise EdgeListError(str(exc), row=num) from None
        if not np.isfinite(wf) or wf <= 0:
            raise EdgeListError(f"weight must be positive and finite, got {w!r}", row=num)
        parsed.append((src_i, dst_i, wf))

    labels = np.array(sorted({p[0] for p in parsed} | {p[1] for p in parsed}), dtype=np.int64)
    index = {lab: idx for idx, lab in enumerate(labels.tolist())}
    W = np.zeros((len(labels), len(labels)))
    for src, dst, w in parsed:
        W[index[src], index[dst]] += w
    return WeightedDigraph(W, labels)


def _as_node(x) -> int:
    if isinstance(x, str):
        x = x.strip()
        if not x.lstrip("-").isdigit():
            raise ValueError(f"node id must be an integer, got {x!r}")
    if isinstance(x, (float, np.floating)) and not float(x).is_integer():
        raise ValueError(f"node id must be an integer, got {x!r}")
    v = int(x)
    if v < 0:
        raise ValueError(f"node id must be nonnegative, got {v}")
    return v


def format_weight(w: float) -> str:
    """Shortest round-tripping decimal literal."""
    return np.format_float_positional(float(w), unique=True, trim="-")


def read_edge_list(path) -> WeightedDigraph:
    """Read a ``src,dst,weight`` CSV (header required)."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["src", "dst", "weight"]:
            raise EdgeListError(f"expected header 'src,dst,weight', got {header!r}", row=1, unit="line")
        numbered = [(reader.line_num, r) for r in reader if r]
    try:
        return from_edge_list([r for _, r in numbered])
    except EdgeListError as exc:
        line = numbered[exc.row - 1][0] if exc.row else None
        raise EdgeListError(str(exc).split(": ", 1)[-1], row=line, unit="line") from None


def write_edge_list(g: WeightedDigraph, path) -> None:
    """Write ``g`` as CSV rows sorted by (src, dst)."""
    tmp = f"{path}.tmp"
    with open(tmp, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["src", "dst", "weight"])
        for src, dst, w in g.edges():
            writer.writerow([src, dst, format_weight(w)])
    os.replace(tmp, path)
