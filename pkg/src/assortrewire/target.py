"""Target adjacency matrices with prescribed assortativity.

A target ``L`` must be nonnegative, keep every row and column sum of the
initial matrix ``W``, keep the number of edges, and hit the requested
coefficients. Because the margins are fixed, the strength profile of ``L``
equals that of ``W`` and each coefficient constraint is linear in ``L``:

    sum_ij L_ij x_i y_j = r* tau sd_src sd_trg

with ``x``/``y`` the source/target deviation vectors of ``W``. With the
support of ``L`` pinned to that of ``W`` the edge count is preserved by
construction and the whole problem is a plain LP. A free support needs
binary edge indicators; that MILP is exported for an external solver (see
``assortrewire.mps``).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .assortativity import (
    PAIRS,
    AssortativityQuad,
    UndefinedCoefficientError,
    _check_pair,
    assortativity_all,
    covariance_weights,
    denominator,
)
from .graph import ZERO_WEIGHT, StrengthProfile, WeightedDigraph, nnz, strength_profile
from .simplex import INFEASIBLE, OPTIMAL, LinearProgram, solve_lp

FIXED = "fixed"
FREE = "free"

MARGIN_TOL = 1e-7
ASSORT_TOL = 1e-6

FEASIBLE = "feasible"
EXPORTED = "exported"


class ConfigurationError(ValueError):
    """Edge-weight bounds or support mode incompatible with the request."""


class TargetVerificationError(ValueError):
    """A candidate target violates one of the target conditions."""

    def __init__(self, condition, detail):
        self.condition = condition
        super().__init__(f"{condition}: {detail}")


@dataclass(frozen=True)
class Objective:
    """What the LP minimises.

    ``zero``: any feasible point. ``l1``: ``sum |w_ij - L_ij|``.
    ``min`` / ``max``: the covariance numerator of ``r(a, b)``.
    """

    kind: str
    a: int | None = None
    b: int | None = None

    def __post_init__(self):
        if self.kind not in ("zero", "l1", "min", "max"):
            raise ValueError(f"unknown objective {self.kind!r}")
        if self.kind in ("min", "max"):
            _check_pair(self.a, self.b)

    @property
    def is_bound(self) -> bool:
        return self.kind in ("min", "max")

    def __str__(self):
        return f"{self.kind}({self.a},{self.b})" if self.is_bound else self.kind


ZERO = Objective("zero")
L1_TO_W = Objective("l1")


def bound_min(a, b) -> Objective:
    return Objective("min", a, b)


def bound_max(a, b) -> Objective:
    return Objective("max", a, b)


def parse_objective(text: str) -> Objective:
    """``"zero"``, ``"l1"``, ``"min:1,2"`` or ``"max:2,1"``."""
    text = text.strip().lower()
    if text in ("zero", "l1"):
        return Objective(text)
    kind, _, pair = text.partition(":")
    a, b = (int(v) for v in pair.split(","))
    return Objective(kind, a, b)


def default_kappa(g: WeightedDigraph) -> tuple[float, float]:
    """``(0.5 * smallest weight, 2 * largest weight)``."""
    w = g.W[g.W > ZERO_WEIGHT]
    if w.size == 0:
        raise ConfigurationError("graph has no edges")
    return 0.5 * float(w.min()), 2.0 * float(w.max())


def _targets_dict(targets) -> dict:
    if targets is None:
        return {}
    if isinstance(targets, AssortativityQuad):
        return {ab: v for ab, v in zip(PAIRS, targets) if v is not None}
    if isinstance(targets, dict):
        out = {}
        for key, v in targets.items():
            ab = tuple(key) if not isinstance(key, str) else (int(key[-2]), int(key[-1]))
            _check_pair(*ab)
            if v is not None:
                out[ab] = float(v)
        return out
    return {ab: float(v) for ab, v in zip(PAIRS, targets) if v is not None}


@dataclass
class TargetProblem:
    """Specification of one target-matrix search.

    ``targets`` maps ``(a, b)`` to ``r*`` (an ``AssortativityQuad``, a
    4-sequence or a dict; missing/None entries are unconstrained).
    ``kappa_lower`` / ``kappa_upper`` default to ``default_kappa(g)``.
    """

    g: WeightedDigraph
    targets: dict | AssortativityQuad | None = None
    kappa_lower: float | None = None
    kappa_upper: float | None = None
    objective: Objective = ZERO
    support_mode: str = FIXED

    def __post_init__(self):
        self.targets = _targets_dict(self.targets)
        if self.support_mode not in (FIXED, FREE):
            raise ConfigurationError(f"support mode must be 'fixed' or 'free', got {self.support_mode!r}")
        lo, hi = default_kappa(self.g)
        if self.kappa_lower is None:
            self.kappa_lower = lo
        if self.kappa_upper is None:
            self.kappa_upper = hi
        if not 0 < self.kappa_lower <= self.kappa_upper:
            raise ConfigurationError(
                f"need 0 < kappa_lower <= kappa_upper, got ({self.kappa_lower}, {self.kappa_upper})"
            )
        if self.support_mode == FIXED:
            w = self.g.W[self.g.support()]
            if self.kappa_lower > w.min() or self.kappa_upper < w.max():
                raise ConfigurationError(
                    f"kappa bounds [{self.kappa_lower}, {self.kappa_upper}] exclude existing weights "
                    f"[{w.min()}, {w.max()}] under fixed support"
                )


@dataclass
class TargetMatrix:
    """Solved (or exported) target with its verification data."""

    status: str
    Lambda: np.ndarray | None
    achieved: AssortativityQuad | None = None
    objective_value: float | None = None
    iterations: int = 0
    labels: np.ndarray | None = None
    extra: dict = field(default_factory=dict)

    def graph(self) -> WeightedDigraph:
        return WeightedDigraph(self.Lambda, self.labels)


def linearized_assortativity_constraint(profile: StrengthProfile, a: int, b: int, r_star: float):
    """Coefficient matrix and right-hand side of the linear form of ``r(a, b) = r*``.

    Returns ``(C, rhs)`` where ``C[i, j]`` is the deviation product for cell
    ``(i, j)`` and ``rhs = r* * tau * sd_src^(a) * sd_trg^(b)``. Valid for
    any matrix sharing the margins of the one ``profile`` came from.
    """
    denom = denominator(profile, a, b)
    return covariance_weights(profile, a, b), float(r_star) * denom


def build_problem(tp: TargetProblem) -> LinearProgram:
    """Fixed-support LP for ``tp``.

    One variable per edge of ``W`` with bounds ``[kappa_lower, kappa_upper]``,
    column-sum rows (the last nonempty one dropped, it is implied by the
    others), row-sum rows and one row per requested coefficient. ``l1`` adds a
    deviation variable per edge with two ``<=`` rows; ``min``/``max`` drop
    all coefficient rows.
    """
    if tp.support_mode != FIXED:
        raise ConfigurationError("free support needs a MILP solver; use assortrewire.mps.export_mip")
    g = tp.g
    profile = strength_profile(g)
    rows, cols = np.nonzero(g.support())
    ne = rows.size
    labels = g.labels
    names = [f"L_{labels[i]}_{labels[j]}" for i, j in zip(rows, cols)]

    A, b, row_names = [], [], []
    col_nodes = [j for j in range(g.n) if np.any(cols == j)]
    for j in col_nodes[:-1]:
        A.append((cols == j).astype(float))
        b.append(profile.s_in[j])
        row_names.append(f"IN_{labels[j]}")
    for i in range(g.n):
        mask = rows == i
        if mask.any():
            A.append(mask.astype(float))
            b.append(profile.s_out[i])
            row_names.append(f"OUT_{labels[i]}")
    if not tp.objective.is_bound:
        for (a_, b_), r_star in sorted(tp.targets.items()):
            C, rhs = linearized_assortativity_constraint(profile, a_, b_, r_star)
            A.append(C[rows, cols])
            b.append(rhs)
            row_names.append(f"R_{a_}{b_}")
    A = np.array(A).reshape(-1, ne)
    b = np.array(b)

    lb = np.full(ne, tp.kappa_lower)
    ub = np.full(ne, tp.kappa_upper)
    w = g.W[rows, cols]
    meta = {"rows": rows, "cols": cols, "n_edges": ne}
    kind = tp.objective.kind
    if kind == "zero":
        return LinearProgram(np.zeros(ne), A, b, lb, ub, names=names, row_names=row_names, meta=meta)
    if kind == "l1":
        eye = np.eye(ne)
        A_ub = np.block([[eye, -eye], [-eye, -eye]])
        b_ub = np.concatenate([w, -w])
        t_hi = np.maximum(tp.kappa_upper - w, w - tp.kappa_lower)
        c = np.concatenate([np.zeros(ne), np.ones(ne)])
        A_eq = np.hstack([A, np.zeros_like(A)])
        names = names + [f"T_{labels[i]}_{labels[j]}" for i, j in zip(rows, cols)]
        return LinearProgram(
            c, A_eq, b, np.concatenate([lb, np.zeros(ne)]), np.concatenate([ub, t_hi]),
            A_ub, b_ub, names=names, row_names=row_names, meta=meta,
        )
    C = covariance_weights(profile, tp.objective.a, tp.objective.b)[rows, cols]
    c = C if kind == "min" else -C
    return LinearProgram(c, A, b, lb, ub, names=names, row_names=row_names, meta=meta)


def check_target(W: np.ndarray, L: np.ndarray, targets=None, kappa=None) -> list[tuple[str, str]]:
    """Independent check of the target conditions; returns violations.

    Each violation is ``(condition, detail)`` with condition one of
    ``nonnegativity``, ``margins``, ``sparsity``, ``assortativity``,
    ``weight-bounds``. An empty list means ``L`` is a valid target for ``W``.
    """
    W = np.asarray(W, dtype=float)
    L = np.asarray(L, dtype=float)
    out = []
    if L.shape != W.shape:
        return [("shape", f"{L.shape} != {W.shape}")]
    if np.any(L < -ZERO_WEIGHT):
        i, j = np.unravel_index(np.argmin(L), L.shape)
        out.append(("nonnegativity", f"L[{i},{j}] = {L[i, j]}"))
    row_err = np.max(np.abs(L.sum(axis=1) - W.sum(axis=1)), initial=0.0)
    col_err = np.max(np.abs(L.sum(axis=0) - W.sum(axis=0)), initial=0.0)
    if max(row_err, col_err) > MARGIN_TOL:
        out.append(("margins", f"max row error {row_err:.3g}, column error {col_err:.3g}"))
    if nnz(L) != nnz(W):
        out.append(("sparsity", f"nnz {nnz(L)} != {nnz(W)}"))
    if kappa is not None:
        pos = L[L > ZERO_WEIGHT]
        lo, hi = kappa
        if pos.size and (pos.min() < lo - MARGIN_TOL or pos.max() > hi + MARGIN_TOL):
            out.append(("weight-bounds", f"weights in [{pos.min()}, {pos.max()}] outside [{lo}, {hi}]"))
    targets = _targets_dict(targets)
    if targets and not out:
        # coefficients of L from its own margins, which equal W's here
        achieved = assortativity_all(WeightedDigraph(np.maximum(L, 0.0)))
        for (a, b), r_star in targets.items():
            r = achieved.get(a, b)
            if r is None or abs(r - r_star) > ASSORT_TOL:
                out.append(("assortativity", f"r({a},{b}) = {r} vs target {r_star}"))
    return out


def verify_target(W, L, targets=None, kappa=None) -> None:
    """Raise ``TargetVerificationError`` on the first violated condition."""
    bad = check_target(W, L, targets, kappa)
    if bad:
        raise TargetVerificationError(*bad[0])


def solve_target(tp: TargetProblem, rule: str = "auto") -> TargetMatrix:
    """Solve the fixed-support problem and verify the result.

    Returns status ``infeasible`` (with no matrix) when the targets cannot be
    met on this support with these weight bounds; the remedy is to widen the
    bounds, re-target inside ``assortativity_bounds`` or go to free support.
    """
    lp = build_problem(tp)
    res = solve_lp(lp, rule=rule)
    if res.status == INFEASIBLE:
        return TargetMatrix(INFEASIBLE, None, iterations=res.iterations, labels=tp.g.labels)
    L = np.zeros_like(tp.g.W)
    ne = lp.meta["n_edges"]
    L[lp.meta["rows"], lp.meta["cols"]] = res.x[:ne]
    verify_target(tp.g.W, L, tp.targets, (tp.kappa_lower, tp.kappa_upper))
    achieved = assortativity_all(WeightedDigraph(L, tp.g.labels))
    return TargetMatrix(OPTIMAL, L, achieved, res.objective, res.iterations, tp.g.labels)


def assortativity_bounds(g: WeightedDigraph, a: int, b: int, kappa_lower=None, kappa_upper=None,
                         support_mode: str = FIXED, rule: str = "auto") -> tuple[float, float]:
    """Smallest and largest attainable ``r(a, b)`` over valid targets.

    Minimises and maximises the covariance numerator subject to the margin
    and weight-bound constraints (no coefficient rows), then divides by
    ``tau * sd * sd``. With the default bounds ``lo <= r_W(a, b) <= hi``.
    """
    out = []
    for make in (bound_min, bound_max):
        tp = TargetProblem(g, None, kappa_lower, kappa_upper, make(a, b), support_mode)
        profile = strength_profile(g)
        denom = denominator(profile, a, b)
        lp = build_problem(tp)
        res = solve_lp(lp, rule=rule)
        if not res.optimal:
            raise ConfigurationError("bounds problem infeasible: kappa bounds exclude every margin-preserving matrix")
        num = res.objective if make is bound_min else -res.objective
        out.append(num / denom)
    return out[0], out[1]
