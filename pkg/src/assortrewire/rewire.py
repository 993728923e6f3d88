"""Strength-preserving rewiring of ``W`` into a target ``L``.

The difference ``Psi = W - L`` has zero row and column sums. Cells are
zeroed one at a time in row-major order over the first ``n - 1`` rows and
columns (the last row and column follow from the zero margins). A cell
``(i, j)`` is cleared with four-cell moves against cells ``(k, l)`` strictly
below and to the right of it:

    psi_ij -= dw, psi_kl -= dw, psi_il += dw, psi_kj += dw

which on the evolving adjacency moves ``dw`` from edges i->j, k->l onto
i->l, k->j (or the reverse for ``dw < 0``). The step sizes never draw more
weight than an edge currently holds.
"""
from __future__ import annotations

import csv
import os
from dataclasses import dataclass, field

import numpy as np

from .assortativity import PAIRS, assortativity_all, quad_deltas
from .graph import (
    ZERO_WEIGHT,
    GraphError,
    RewiringStep,
    WeightedDigraph,
    format_weight,
    strength_profile,
    transfer,
)

# |psi| at or below this counts as zero
PSI_EPS = 1e-9
MARGIN_TOL = 1e-9


class RewiringStallError(RuntimeError):
    """A cell could not be cleared; the margins of Psi were not zero."""


class MarginMismatchError(GraphError):
    """Initial and target matrices have different row or column sums."""


class CorruptRecordError(GraphError):
    """A recorded step overdraws an edge when replayed."""

    def __init__(self, message, step_index):
        self.step_index = step_index
        super().__init__(f"step {step_index}: {message}")


def delta_w(psi_ij: float, psi_kl: float, psi_il: float, psi_kj: float) -> float:
    """Step size for clearing ``psi_ij`` against ``(k, l)``.

    Positive ``psi_ij`` consumes positive ``psi_kl``; negative ``psi_ij`` is
    filled from positive ``psi_il`` and ``psi_kj``. Zero means no move.
    """
    if psi_ij > 0:
        return min(psi_ij, max(psi_kl, 0.0))
    if psi_ij < 0:
        return max(psi_ij, min(0.0, -psi_il), min(0.0, -psi_kj))
    return 0.0


@dataclass
class RewiringRecord:
    """Ordered rewiring steps in matrix-index space of the initial graph.

    Step ``t`` moves ``dw[t]`` from ``i->j`` and ``k->l`` onto ``i->l`` and
    ``k->j``. ``labels`` maps indices back to node ids for output.
    """

    i: np.ndarray
    j: np.ndarray
    k: np.ndarray
    l: np.ndarray
    dw: np.ndarray
    labels: np.ndarray
    residual: float = 0.0  # max |psi| left by the sweep

    def __len__(self):
        return int(self.dw.size)

    def steps(self) -> list[RewiringStep]:
        lab = self.labels
        return [
            RewiringStep(lab[a].item(), lab[b].item(), lab[c].item(), lab[d].item(), float(w))
            for a, b, c, d, w in zip(self.i, self.j, self.k, self.l, self.dw)
        ]

    def label_rows(self):
        """``(i, j, k, l, dw)`` tuples in node labels."""
        lab = self.labels
        return list(zip(lab[self.i].tolist(), lab[self.j].tolist(), lab[self.k].tolist(),
                        lab[self.l].tolist(), self.dw.tolist()))

    @classmethod
    def from_steps(cls, steps, labels) -> "RewiringRecord":
        """Build from ``RewiringStep``s / 5-tuples given in node labels."""
        labels = np.asarray(labels)
        index = {lab: idx for idx, lab in enumerate(labels.tolist())}
        rows = [s.as_tuple() if isinstance(s, RewiringStep) else tuple(s) for s in steps]
        if not rows:
            z = np.zeros(0, dtype=np.intp)
            return cls(z, z.copy(), z.copy(), z.copy(), np.zeros(0), labels)
        try:
            idx = np.array([[index[r[0]], index[r[1]], index[r[2]], index[r[3]]] for r in rows], dtype=np.intp)
        except KeyError as exc:
            raise GraphError(f"record names unknown node {exc.args[0]!r}") from None
        dw = np.array([float(r[4]) for r in rows])
        return cls(idx[:, 0], idx[:, 1], idx[:, 2], idx[:, 3], dw, labels)


@dataclass
class DifferenceMatrix:
    """``Psi`` stored in sweep order.

    ``psi[p, q]`` is the difference for source ``row_perm[p]`` and target
    ``col_perm[q]`` (original matrix indices).
    """

    psi: np.ndarray
    row_perm: np.ndarray = None
    col_perm: np.ndarray = None

    def __post_init__(self):
        n = self.psi.shape[0]
        if self.row_perm is None:
            self.row_perm = np.arange(n)
        if self.col_perm is None:
            self.col_perm = np.arange(n)

    def original(self) -> np.ndarray:
        """Psi in original index order."""
        out = np.empty_like(self.psi)
        out[np.ix_(self.row_perm, self.col_perm)] = self.psi
        return out


def _emit(dm: DifferenceMatrix, rec, i, j, k, l, dw):
    rp, cp = dm.row_perm, dm.col_perm
    if dw > 0:
        rec.append((int(rp[i]), int(cp[j]), int(rp[k]), int(cp[l]), float(dw)))
    else:
        rec.append((int(rp[i]), int(cp[l]), int(rp[k]), int(cp[j]), float(-dw)))


def _move(psi, i, j, k, l, dw):
    psi[i, j] -= dw
    psi[k, l] -= dw
    psi[i, l] += dw
    psi[k, j] += dw


def rewire_cell(dm: DifferenceMatrix, rec, i: int, j: int, eps: float = PSI_EPS) -> None:
    """Clear ``psi[i, j]`` (sweep positions) against cells below and right.

    Visits ``(k, l)``, ``k > i``, ``l > j``, in row-major order and applies
    ``delta_w`` at each; only cells that can give a nonzero step are visited,
    which yields the same moves as the full double loop. Steps are appended
    to the list ``rec`` as ``(i, j, k, l, dw)`` in original indices.

    Cells with ``|psi| <= eps`` count as cleared; candidates that small are
    only used when the larger ones do not suffice.
    """
    psi = dm.psi
    for floor in (eps, 0.0):
        p = psi[i, j]
        if abs(p) <= eps:
            return
        if p > 0:
            ks, ls = np.nonzero(psi[i + 1:, j + 1:] > floor)
            for k, l in zip((ks + i + 1).tolist(), (ls + j + 1).tolist()):
                dw = delta_w(psi[i, j], psi[k, l], psi[i, l], psi[k, j])
                if dw == 0:
                    continue
                _move(psi, i, j, k, l, dw)
                _emit(dm, rec, i, j, k, l, dw)
                if psi[i, j] <= eps:
                    break
        else:
            ks = (np.flatnonzero(psi[i + 1:, j] > floor) + i + 1).tolist()
            ls = (np.flatnonzero(psi[i, j + 1:] > floor) + j + 1).tolist()
            for k in ks:
                for l in ls:
                    dw = delta_w(psi[i, j], psi[k, l], psi[i, l], psi[k, j])
                    if dw == 0:
                        continue
                    _move(psi, i, j, k, l, dw)
                    _emit(dm, rec, i, j, k, l, dw)
                    if psi[i, j] >= -eps:
                        break
                if psi[i, j] >= -eps:
                    break
    if abs(psi[i, j]) > eps:
        raise RewiringStallError(
            f"cell ({dm.row_perm[i]}, {dm.col_perm[j]}) left at {psi[i, j]!r}; margins of Psi are not zero"
        )


def reorder(dm: DifferenceMatrix, i: int) -> None:
    """Bring large entries forward before sweeping row ``i``.

    The remaining row (``i`` or below) with the largest absolute sum is
    swapped into position ``i``, then all columns are stably sorted by
    decreasing ``|psi[i, :]|``. Rows above ``i`` are zero, so neither
    permutation disturbs finished work.
    """
    psi = dm.psi
    r = i + int(np.argmax(np.abs(psi[i:]).sum(axis=1)))
    if r != i:
        psi[[i, r]] = psi[[r, i]]
        dm.row_perm[[i, r]] = dm.row_perm[[r, i]]
    order = np.argsort(-np.abs(psi[i]), kind="stable")
    dm.psi = psi[:, order]
    dm.col_perm = dm.col_perm[order]


def _as_matrix(x):
    return x.W if isinstance(x, WeightedDigraph) else np.asarray(x, dtype=float)


def check_margins(W, L, tol: float = MARGIN_TOL) -> None:
    W, L = _as_matrix(W), _as_matrix(L)
    if W.shape != L.shape:
        raise MarginMismatchError(f"shapes differ: {W.shape} vs {L.shape}")
    if np.any(L < -ZERO_WEIGHT):
        raise MarginMismatchError("target has negative entries")
    scale = max(1.0, float(np.abs(W).max(initial=0.0)))
    row = np.abs(W.sum(axis=1) - L.sum(axis=1)).max(initial=0.0)
    col = np.abs(W.sum(axis=0) - L.sum(axis=0)).max(initial=0.0)
    if max(row, col) > tol * scale * max(1, W.shape[0]):
        raise MarginMismatchError(f"row/column sums differ (max row gap {row:.3g}, column gap {col:.3g})")


def sweep(W, L, reorder_rows: bool = False, eps: float = PSI_EPS) -> RewiringRecord:
    """Rewiring record transforming ``W`` into ``L``.

    ``W`` and ``L`` are graphs or matrices with equal margins. With
    ``reorder_rows`` each row starts with ``reorder``. Steps are stored in
    original indices of ``W`` (labels from ``W`` if it is a graph).
    """
    labels = W.labels if isinstance(W, WeightedDigraph) else np.arange(_as_matrix(W).shape[0])
    Wm, Lm = _as_matrix(W), _as_matrix(L)
    check_margins(Wm, Lm)
    n = Wm.shape[0]
    dm = DifferenceMatrix(Wm - Lm)
    rec = []
    for i in range(n - 1):
        if reorder_rows:
            reorder(dm, i)
        for j in range(n - 1):
            rewire_cell(dm, rec, i, j, eps)
    scale = max(1.0, float(np.abs(Wm).max(initial=0.0)))
    resid = float(np.abs(dm.psi).max(initial=0.0))
    if resid > PSI_EPS * scale:
        raise RewiringStallError(f"sweep finished with max |psi| = {resid:.3g}")
    if rec:
        arr = np.array(rec, dtype=float)
        idx = arr[:, :4].astype(np.intp)
        return RewiringRecord(idx[:, 0], idx[:, 1], idx[:, 2], idx[:, 3], arr[:, 4], np.asarray(labels), resid)
    out = RewiringRecord.from_steps([], labels)
    out.residual = resid
    return out


@dataclass
class ReplayResult:
    graph: WeightedDigraph
    trace_steps: np.ndarray
    trace: np.ndarray  # (rows, 4) coefficients, NaN where undefined
    min_weight: float = 0.0
    extra: dict = field(default_factory=dict)


def replay(W: WeightedDigraph, record: RewiringRecord, trace_every: int = 1,
           tol: float = ZERO_WEIGHT) -> ReplayResult:
    """Apply ``record`` to ``W`` step by step.

    Coefficients are tracked incrementally from the (invariant) strength
    profile and reported after step 0 (the initial graph), every
    ``trace_every`` steps and after the last step. Raises
    ``CorruptRecordError`` if a step would drive a weight below ``-tol``.
    """
    if trace_every < 1:
        raise ValueError("trace_every must be >= 1")
    M = np.array(W.W, dtype=float)
    min_w = float(M.min(initial=0.0))
    I, J, K, L, DW = (record.i.tolist(), record.j.tolist(), record.k.tolist(),
                      record.l.tolist(), record.dw.tolist())
    for t in range(len(DW)):
        i, j, k, l, dw = I[t], J[t], K[t], L[t], DW[t]
        if not dw > 0:
            raise CorruptRecordError(f"nonpositive weight {dw!r}", t)
        a, b = M[i, j] - dw, M[k, l] - dw
        if a < -tol or b < -tol:
            raise CorruptRecordError(f"overdraws edge ({i}, {j}) or ({k}, {l}) by dw={dw!r}", t)
        transfer(M, i, j, k, l, dw)
        if a < min_w or b < min_w:
            min_w = min(a, b)
    np.maximum(M, 0.0, out=M)

    q0 = assortativity_all(W)
    start = np.array([np.nan if v is None else v for v in q0])
    nsteps = len(record)
    if nsteps:
        deltas = quad_deltas(strength_profile(W), record.i, record.j, record.k, record.l, record.dw)
        path = start + np.cumsum(deltas, axis=0)
    else:
        path = np.zeros((0, 4))
    marks = np.arange(trace_every, nsteps + 1, trace_every)
    if nsteps and (marks.size == 0 or marks[-1] != nsteps):
        marks = np.append(marks, nsteps)
    trace_steps = np.concatenate([[0], marks]).astype(np.int64)
    trace = np.vstack([start[None, :], path[marks - 1]]) if nsteps else start[None, :]
    return ReplayResult(WeightedDigraph(M, W.labels), trace_steps, trace, min_w)


TRACE_HEADER = ["step", "i", "j", "k", "l", "dw"] + [f"r{a}{b}" for a, b in PAIRS]
RECORD_HEADER = ["step", "i", "j", "k", "l", "dw"]


def _fmt_r(v):
    return "undefined" if not np.isfinite(v) else repr(float(v))


def write_trace(path, record: RewiringRecord, result: ReplayResult) -> None:
    """Trace CSV: one row per traced step with the step and the coefficients after it."""
    lab = record.labels
    with open(f"{path}.tmp", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(TRACE_HEADER)
        for s, quad in zip(result.trace_steps.tolist(), result.trace):
            if s == 0:
                step_cols = ["", "", "", "", ""]
            else:
                t = s - 1
                step_cols = [lab[record.i[t]].item(), lab[record.j[t]].item(), lab[record.k[t]].item(),
                             lab[record.l[t]].item(), format_weight(record.dw[t])]
            w.writerow([s] + step_cols + [_fmt_r(v) for v in quad])
    os.replace(f"{path}.tmp", path)


def write_record(path, record: RewiringRecord) -> None:
    with open(f"{path}.tmp", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(RECORD_HEADER)
        for t, (i, j, k, l, dw) in enumerate(record.label_rows(), start=1):
            w.writerow([t, i, j, k, l, repr(dw)])
    os.replace(f"{path}.tmp", path)


def read_record(path, labels) -> RewiringRecord:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        rows = [(int(r["i"]), int(r["j"]), int(r["k"]), int(r["l"]), float(r["dw"])) for r in reader]
    return RewiringRecord.from_steps(rows, labels)
