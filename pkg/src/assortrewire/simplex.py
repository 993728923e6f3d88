"""Dense bounded-variable primal simplex.

Solves ``min c @ x`` subject to ``A_eq x = b_eq``, ``A_ub x <= b_ub`` and
``lb <= x <= ub`` with a two-phase tableau method. Nonbasic variables sit at
one of their bounds, so box constraints never become rows. Entering columns
are priced by the largest reduced cost until the method stalls on degenerate
pivots, after which Bland's smallest-index rule takes over (on entering and
leaving choice) and guarantees termination.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"

FEAS_TOL = 1e-7
OPT_TOL = 1e-9
PIVOT_TOL = 1e-9
MAX_ITER = 10**6


class SolverStallError(RuntimeError):
    """The iteration cap was reached without a verdict."""


class LPFormatError(ValueError):
    """Inconsistent dimensions or non-finite bounds."""


@dataclass
class LinearProgram:
    """Canonical LP carrier.

    ``A_ub`` / ``b_ub`` are optional ``<=`` rows; every variable needs finite
    bounds.
    """

    c: np.ndarray
    A_eq: np.ndarray
    b_eq: np.ndarray
    lb: np.ndarray
    ub: np.ndarray
    A_ub: np.ndarray | None = None
    b_ub: np.ndarray | None = None
    names: list[str] | None = None
    row_names: list[str] | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=float).ravel()
        nv = self.c.size
        self.A_eq = np.asarray(self.A_eq, dtype=float).reshape(-1, nv)
        self.b_eq = np.asarray(self.b_eq, dtype=float).ravel()
        if self.A_ub is None:
            self.A_ub = np.zeros((0, nv))
            self.b_ub = np.zeros(0)
        self.A_ub = np.asarray(self.A_ub, dtype=float).reshape(-1, nv)
        self.b_ub = np.asarray(self.b_ub, dtype=float).ravel()
        self.lb = np.broadcast_to(np.asarray(self.lb, dtype=float), (nv,)).copy()
        self.ub = np.broadcast_to(np.asarray(self.ub, dtype=float), (nv,)).copy()
        if self.A_eq.shape[0] != self.b_eq.size:
            raise LPFormatError(f"A_eq has {self.A_eq.shape[0]} rows but b_eq has {self.b_eq.size}")
        if self.A_ub.shape[0] != self.b_ub.size:
            raise LPFormatError(f"A_ub has {self.A_ub.shape[0]} rows but b_ub has {self.b_ub.size}")
        if not (np.all(np.isfinite(self.lb)) and np.all(np.isfinite(self.ub))):
            raise LPFormatError("every variable needs finite bounds")
        if self.names is not None and len(self.names) != nv:
            raise LPFormatError(f"{len(self.names)} names for {nv} variables")

    @property
    def n_vars(self) -> int:
        return self.c.size

    @property
    def n_eq(self) -> int:
        return self.A_eq.shape[0]

    @property
    def n_ub(self) -> int:
        return self.A_ub.shape[0]


@dataclass
class LPResult:
    status: str
    x: np.ndarray | None
    objective: float | None
    iterations: int

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


class _Tableau:
    """Bounded simplex on ``A x = b``, ``lo <= x <= hi`` (hi may be inf)."""

    def __init__(self, A, b, lo, hi, basis, x, max_iter):
        self.A = A
        self.b = b
        self.lo = lo
        self.hi = hi
        self.basis = np.array(basis, dtype=np.intp)
        self.x = x
        self.max_iter = max_iter
        self.iterations = 0
        self.refactor()

    def refactor(self):
        B = self.A[:, self.basis]
        self.T = np.linalg.solve(B, self.A)
        nonbasic = np.ones(self.A.shape[1], dtype=bool)
        nonbasic[self.basis] = False
        rhs = self.b - self.A[:, nonbasic] @ self.x[nonbasic]
        self.x[self.basis] = np.linalg.solve(B, rhs)

    def run(self, c, rule="auto"):
        m, N = self.T.shape
        is_basic = np.zeros(N, dtype=bool)
        is_basic[self.basis] = True
        span = self.hi - self.lo
        movable = span > 0
        degenerate_streak = 0
        bland = rule == "bland"
        since_refactor = 0
        while True:
            if self.iterations >= self.max_iter:
                raise SolverStallError(f"simplex exceeded {self.max_iter} iterations")
            d = c - c[self.basis] @ self.T
            at_lo = self.x <= self.lo
            score = np.where(at_lo, -d, d)
            score[is_basic | ~movable] = -np.inf
            cand = np.flatnonzero(score > OPT_TOL)
            if cand.size == 0:
                return
            use_bland = bland or degenerate_streak > 50
            if use_bland:
                q = int(cand[0])
            else:
                q = int(cand[np.argmax(score[cand])])
            direction = 1.0 if at_lo[q] else -1.0
            alpha = direction * self.T[:, q]
            xb = self.x[self.basis]
            lob = self.lo[self.basis]
            hib = self.hi[self.basis]
            ratios = np.full(m, np.inf)
            dec = alpha > PIVOT_TOL
            inc = alpha < -PIVOT_TOL
            ratios[dec] = (xb[dec] - lob[dec]) / alpha[dec]
            ratios[inc] = (hib[inc] - xb[inc]) / -alpha[inc]
            np.maximum(ratios, 0.0, out=ratios)
            t_row = ratios.min() if m else np.inf
            t_flip = span[q]
            self.iterations += 1
            if t_flip <= t_row:
                if not np.isfinite(t_flip):
                    raise SolverStallError("unbounded direction in a bounded program")
                self.x[self.basis] = xb - t_flip * alpha
                self.x[q] = self.hi[q] if at_lo[q] else self.lo[q]
                degenerate_streak = 0
                continue
            ties = np.flatnonzero(ratios <= t_row + 1e-12)
            if use_bland:
                r = int(ties[np.argmin(self.basis[ties])])
            else:
                # largest pivot among ties is numerically safest
                r = int(ties[np.argmax(np.abs(alpha[ties]))])
            t = ratios[r]
            degenerate_streak = degenerate_streak + 1 if t <= 1e-12 else 0
            leaving = self.basis[r]
            self.x[self.basis] = xb - t * alpha
            self.x[q] = self.x[q] + direction * t
            self.x[leaving] = self.lo[leaving] if alpha[r] > 0 else self.hi[leaving]
            self._pivot(r, q)
            is_basic[leaving] = False
            is_basic[q] = True
            since_refactor += 1
            if since_refactor >= 100:
                self.refactor()
                since_refactor = 0

    def _pivot(self, r, q):
        T = self.T
        piv = T[r, q]
        T[r] /= piv
        col = T[:, q].copy()
        col[r] = 0.0
        T -= np.outer(col, T[r])
        self.basis[r] = q


def _standard_form(lp: LinearProgram):
    """Stack ``A_eq`` over ``A_ub`` and give each ``<=`` row a bounded slack."""
    nv = lp.n_vars
    k = lp.n_ub
    A = np.zeros((lp.n_eq + k, nv + k))
    A[: lp.n_eq, :nv] = lp.A_eq
    A[lp.n_eq :, :nv] = lp.A_ub
    A[lp.n_eq :, nv:] = np.eye(k)
    b = np.concatenate([lp.b_eq, lp.b_ub])
    # slack upper bound: largest possible gap of the row over the box
    row_min = np.minimum(lp.A_ub * lp.lb, lp.A_ub * lp.ub).sum(axis=1)
    slack_hi = np.maximum(lp.b_ub - row_min, 0.0)
    lo = np.concatenate([lp.lb, np.zeros(k)])
    hi = np.concatenate([lp.ub, slack_hi])
    c = np.concatenate([lp.c, np.zeros(k)])
    return A, b, lo, hi, c


def solve_lp(lp: LinearProgram, max_iter: int = MAX_ITER, rule: str = "auto") -> LPResult:
    """Solve ``lp`` and return an ``LPResult`` (status optimal or infeasible).

    ``rule="bland"`` forces the smallest-index rule from the first pivot;
    the default starts with largest-coefficient pricing and switches to
    Bland's rule after 50 consecutive degenerate pivots.

    Raises ``SolverStallError`` past ``max_iter`` pivots.
    """
    if rule not in ("auto", "bland"):
        raise ValueError(f"unknown pricing rule {rule!r}")
    A, b, lo, hi, c = _standard_form(lp)
    if np.any(lo > hi):
        return LPResult(INFEASIBLE, None, None, 0)
    keep, consistent = independent_rows(A, b)
    if not consistent:
        return LPResult(INFEASIBLE, None, None, 0)
    A, b = A[keep], b[keep]
    m, N = A.shape
    x = lo.copy()
    if m == 0:
        x = np.where(c < 0, hi, lo)
        return LPResult(OPTIMAL, x[: lp.n_vars], float(lp.c @ x[: lp.n_vars]), 0)

    # phase 1: one artificial per row absorbing the residual at the start point
    resid = b - A @ x
    sign = np.where(resid >= 0, 1.0, -1.0)
    A1 = np.hstack([A, np.diag(sign)])
    lo1 = np.concatenate([lo, np.zeros(m)])
    hi1 = np.concatenate([hi, np.full(m, np.inf)])
    x1 = np.concatenate([x, np.abs(resid)])
    c1 = np.concatenate([np.zeros(N), np.ones(m)])
    tab = _Tableau(A1, b, lo1, hi1, np.arange(N, N + m), x1, max_iter)
    tab.run(c1, rule)
    scale = 1.0 + np.abs(b).max()
    if np.max(tab.x[N:]) > FEAS_TOL * scale:
        return LPResult(INFEASIBLE, None, None, tab.iterations)

    # rows are independent, so every basic artificial (at level zero) can be
    # pivoted out on its largest structural entry
    tab.refactor()
    for r in range(m):
        if tab.basis[r] < N:
            continue
        row = np.abs(tab.T[r, :N])
        row[tab.basis[tab.basis < N]] = 0.0
        tab._pivot(r, int(np.argmax(row)))
        tab.refactor()
    tab.x[N:] = 0.0
    basis = tab.basis.copy()
    x = tab.x[:N].copy()

    # phase 2
    tab2 = _Tableau(A, b, lo, hi, basis, x, max_iter - tab.iterations)
    tab2.run(c, rule)
    x = tab2.x
    # snap nonbasic round-off to bounds
    x = np.clip(x, lo, hi)
    xs = x[: lp.n_vars]
    return LPResult(OPTIMAL, xs, float(lp.c @ xs), tab.iterations + tab2.iterations)


def independent_rows(A, b, rtol=1e-9):
    """Greedy selection of linearly independent rows of ``A``.

    Returns ``(mask, consistent)``; ``consistent`` is False when a dropped
    row's right-hand side disagrees with the combination of kept rows.
    """
    m, N = A.shape
    keep = np.zeros(m, dtype=bool)
    Q = np.zeros((0, N))
    for r in range(m):
        v = A[r].copy()
        norm = np.linalg.norm(v)
        if norm == 0:
            if abs(b[r]) > FEAS_TOL * (1.0 + np.abs(b).max()):
                return keep, False
            continue
        for _ in range(2):
            v -= Q.T @ (Q @ v)
        res = np.linalg.norm(v)
        if res > rtol * norm:
            keep[r] = True
            Q = np.vstack([Q, v / res])
    dropped = np.flatnonzero(~keep)
    if dropped.size:
        coef, *_ = np.linalg.lstsq(A[keep].T, A[dropped].T, rcond=None)
        implied = coef.T @ b[keep]
        if np.any(np.abs(implied - b[dropped]) > FEAS_TOL * (1.0 + np.abs(b).max())):
            return keep, False
    return keep, True
