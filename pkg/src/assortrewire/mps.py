"""Free-support target search as a MILP in MPS form.

When the support of the target may move, each cell gets a binary indicator
``Z_i_j`` and the edge count becomes a cardinality row. That problem is out
of reach for an in-repo solver, so it is written to an MPS file for an
external MILP solver; its solution is read back and re-verified.

Variable names: ``L_<src>_<dst>`` target weights, ``Z_<src>_<dst>`` edge
indicators, ``T_<src>_<dst>`` absolute deviations (``l1`` objective only),
with node labels in place of ``<src>``/``<dst>``.

The writer uses the fixed-format column layout; names longer than eight
characters widen their field, which free-format MPS readers accept.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np

from .assortativity import AssortativityQuad, assortativity_all, covariance_weights
from .graph import WeightedDigraph, nnz, strength_profile
from .target import (
    EXPORTED,
    FEASIBLE,
    FREE,
    TargetMatrix,
    TargetProblem,
    TargetVerificationError,
    check_target,
    linearized_assortativity_constraint,
)


class MpsFormatError(ValueError):
    """Unreadable MPS or solution file."""


@dataclass
class MipModel:
    """Sparse MILP: ``min c x`` with typed rows, bounds and integer flags.

    Row types follow MPS: ``E`` (=), ``L`` (<=), ``G`` (>=).
    """

    name: str
    var_names: list[str]
    c: np.ndarray
    lb: np.ndarray
    ub: np.ndarray
    integer: np.ndarray
    row_names: list[str]
    row_types: list[str]
    rhs: np.ndarray
    coo_rows: np.ndarray
    coo_cols: np.ndarray
    coo_vals: np.ndarray
    meta: dict = field(default_factory=dict)

    @property
    def n_vars(self):
        return len(self.var_names)

    def dense_A(self) -> np.ndarray:
        A = np.zeros((len(self.row_names), self.n_vars))
        np.add.at(A, (self.coo_rows, self.coo_cols), self.coo_vals)
        return A

    def canonical(self):
        """Hashable-ish summary used to compare two models."""
        order = np.lexsort((self.coo_cols, self.coo_rows))
        return (
            list(self.var_names), self.c.tolist(), self.lb.tolist(), self.ub.tolist(),
            self.integer.tolist(), list(self.row_names), list(self.row_types), self.rhs.tolist(),
            self.coo_rows[order].tolist(), self.coo_cols[order].tolist(), self.coo_vals[order].tolist(),
        )

    def same_problem(self, other: "MipModel") -> bool:
        return self.canonical() == other.canonical()


def build_mip(tp: TargetProblem) -> MipModel:
    """Free-support MILP for ``tp`` over all ``n * n`` cells."""
    g = tp.g
    n = g.n
    lab = g.labels.tolist()
    profile = strength_profile(g)
    kl, ku = float(tp.kappa_lower), float(tp.kappa_upper)
    cells = [(i, j) for i in range(n) for j in range(n)]
    nc = len(cells)
    names = [f"L_{lab[i]}_{lab[j]}" for i, j in cells] + [f"Z_{lab[i]}_{lab[j]}" for i, j in cells]
    lb = np.zeros(2 * nc)
    ub = np.concatenate([np.full(nc, ku), np.ones(nc)])
    integer = np.concatenate([np.zeros(nc, dtype=bool), np.ones(nc, dtype=bool)])
    use_t = tp.objective.kind == "l1"
    if use_t:
        names += [f"T_{lab[i]}_{lab[j]}" for i, j in cells]
        lb = np.concatenate([lb, np.zeros(nc)])
        ub = np.concatenate([ub, np.full(nc, ku + float(g.W.max()))])
        integer = np.concatenate([integer, np.zeros(nc, dtype=bool)])
    nv = len(names)
    c = np.zeros(nv)

    rows, cols, vals = [], [], []
    row_names, row_types, rhs = [], [], []

    def add_row(name, kind, entries, b):
        r = len(row_names)
        row_names.append(name)
        row_types.append(kind)
        rhs.append(float(b))
        for col, v in entries:
            if v != 0.0:
                rows.append(r)
                cols.append(col)
                vals.append(float(v))

    for idx, (i, j) in enumerate(cells):
        add_row(f"UB_{lab[i]}_{lab[j]}", "L", [(idx, 1.0), (nc + idx, -ku)], 0.0)
        add_row(f"LB_{lab[i]}_{lab[j]}", "G", [(idx, 1.0), (nc + idx, -kl)], 0.0)
    add_row("CARD", "E", [(nc + idx, 1.0) for idx in range(nc)], nnz(g))
    for i in range(n):
        add_row(f"OUT_{lab[i]}", "E", [(i * n + j, 1.0) for j in range(n)], profile.s_out[i])
    for j in range(n):
        add_row(f"IN_{lab[j]}", "E", [(i * n + j, 1.0) for i in range(n)], profile.s_in[j])
    if not tp.objective.is_bound:
        for (a, b), r_star in sorted(tp.targets.items()):
            C, b_val = linearized_assortativity_constraint(profile, a, b, r_star)
            add_row(f"R_{a}{b}", "E", list(enumerate(C.ravel())), b_val)
    if use_t:
        w = g.W.ravel()
        for idx, (i, j) in enumerate(cells):
            t = 2 * nc + idx
            add_row(f"DP_{lab[i]}_{lab[j]}", "L", [(idx, 1.0), (t, -1.0)], w[idx])
            add_row(f"DN_{lab[i]}_{lab[j]}", "G", [(idx, 1.0), (t, 1.0)], w[idx])
        c[2 * nc:] = 1.0
    elif tp.objective.is_bound:
        C = covariance_weights(profile, tp.objective.a, tp.objective.b).ravel()
        c[:nc] = C if tp.objective.kind == "min" else -C

    return MipModel(
        name="SSPRMIP", var_names=names, c=c, lb=lb, ub=ub, integer=integer,
        row_names=row_names, row_types=row_types, rhs=np.array(rhs),
        coo_rows=np.array(rows, dtype=np.intp), coo_cols=np.array(cols, dtype=np.intp),
        coo_vals=np.array(vals), meta={"objective": str(tp.objective)},
    )


def _num(v: float) -> str:
    return repr(float(v))


def _fields(*parts) -> str:
    # fixed-format start columns 2, 5, 15, 25, 40, 50 (1-based)
    starts = (1, 4, 14, 24, 39, 49)
    line = ""
    for start, text in zip(starts, parts):
        if text is None:
            continue
        pad = max(start - len(line), 1 if line else start)
        line += " " * pad + text
    return line


def write_mps(model: MipModel, path) -> None:
    """Write ``model`` in MPS (minimisation, objective row ``COST``)."""
    by_col: list[list[tuple[int, float]]] = [[] for _ in range(model.n_vars)]
    for r, col, v in zip(model.coo_rows.tolist(), model.coo_cols.tolist(), model.coo_vals.tolist()):
        by_col[col].append((r, v))
    out = [f"NAME          {model.name}", "ROWS", _fields("N", "COST")]
    out += [_fields(t, name) for name, t in zip(model.row_names, model.row_types)]
    out.append("COLUMNS")
    in_int = False
    for col, name in enumerate(model.var_names):
        if model.integer[col] and not in_int:
            out.append(_fields(None, "MARKER", "'MARKER'", None, "'INTORG'"))
            in_int = True
        elif not model.integer[col] and in_int:
            out.append(_fields(None, "MARKER", "'MARKER'", None, "'INTEND'"))
            in_int = False
        entries = []
        if model.c[col] != 0.0:
            entries.append(("COST", model.c[col]))
        entries += [(model.row_names[r], v) for r, v in sorted(by_col[col])]
        if not entries:
            # keep the column declared
            entries = [("COST", 0.0)]
        for row, v in entries:
            out.append(_fields(None, name, row, _num(v)))
    if in_int:
        out.append(_fields(None, "MARKER", "'MARKER'", None, "'INTEND'"))
    out.append("RHS")
    for name, b in zip(model.row_names, model.rhs.tolist()):
        if b != 0.0:
            out.append(_fields(None, "RHS", name, _num(b)))
    out.append("BOUNDS")
    for col, name in enumerate(model.var_names):
        lo, hi = model.lb[col], model.ub[col]
        if model.integer[col] and lo == 0.0 and hi == 1.0:
            out.append(_fields("BV", "BND", name))
            continue
        if lo != 0.0:
            out.append(_fields("LO", "BND", name, _num(lo)))
        if math.isinf(hi):
            continue
        out.append(_fields("UP", "BND", name, _num(hi)))
    out.append("ENDATA")
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        fh.write("\n".join(out) + "\n")
    os.replace(tmp, path)


def read_mps(path) -> MipModel:
    """Parse an MPS file as written by ``write_mps`` (free-format tokens)."""
    section = None
    name = ""
    obj_row = None
    row_index: dict[str, int] = {}
    row_names, row_types = [], []
    var_index: dict[str, int] = {}
    var_names, integer = [], []
    c_entries: dict[int, float] = {}
    rows, cols, vals = [], [], []
    rhs: dict[int, float] = {}
    bounds: list[tuple[str, str, float | None]] = []
    in_int = False
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.startswith("*"):
                continue
            tok = line.split()
            if not line[0].isspace():
                section = tok[0].upper()
                if section == "NAME":
                    name = tok[1] if len(tok) > 1 else ""
                elif section == "ENDATA":
                    break
                elif section not in ("ROWS", "COLUMNS", "RHS", "BOUNDS", "RANGES"):
                    raise MpsFormatError(f"line {lineno}: unknown section {tok[0]!r}")
                continue
            try:
                if section == "ROWS":
                    kind, rname = tok[0].upper(), tok[1]
                    if kind == "N":
                        if obj_row is None:
                            obj_row = rname
                        continue
                    row_index[rname] = len(row_names)
                    row_names.append(rname)
                    row_types.append(kind)
                elif section == "COLUMNS":
                    if len(tok) >= 3 and tok[1] == "'MARKER'":
                        in_int = tok[2] == "'INTORG'"
                        continue
                    vname = tok[0]
                    if vname not in var_index:
                        var_index[vname] = len(var_names)
                        var_names.append(vname)
                        integer.append(in_int)
                    col = var_index[vname]
                    for rname, v in zip(tok[1::2], tok[2::2]):
                        if rname == obj_row:
                            c_entries[col] = c_entries.get(col, 0.0) + float(v)
                        else:
                            rows.append(row_index[rname])
                            cols.append(col)
                            vals.append(float(v))
                elif section == "RHS":
                    for rname, v in zip(tok[1::2], tok[2::2]):
                        if rname != obj_row:
                            rhs[row_index[rname]] = float(v)
                elif section == "BOUNDS":
                    kind = tok[0].upper()
                    value = float(tok[3]) if len(tok) > 3 else None
                    bounds.append((kind, tok[2], value))
                elif section == "RANGES":
                    raise MpsFormatError(f"line {lineno}: RANGES are not supported")
            except (IndexError, KeyError, ValueError) as exc:
                raise MpsFormatError(f"line {lineno}: cannot parse {line.strip()!r} ({exc})") from None

    nv = len(var_names)
    integer = np.array(integer, dtype=bool)
    lb = np.zeros(nv)
    ub = np.where(integer, 1.0, np.inf)
    for kind, vname, value in bounds:
        col = var_index[vname]
        if kind == "UP":
            ub[col] = value
        elif kind == "LO":
            lb[col] = value
        elif kind == "FX":
            lb[col] = ub[col] = value
        elif kind == "BV":
            lb[col], ub[col] = 0.0, 1.0
            integer[col] = True
        elif kind == "MI":
            lb[col] = -np.inf
        elif kind == "PL":
            ub[col] = np.inf
        else:
            raise MpsFormatError(f"unsupported bound type {kind!r}")
    c = np.zeros(nv)
    for col, v in c_entries.items():
        c[col] = v
    b = np.zeros(len(row_names))
    for r, v in rhs.items():
        b[r] = v
    return MipModel(
        name=name, var_names=var_names, c=c, lb=lb, ub=ub, integer=integer,
        row_names=row_names, row_types=row_types, rhs=b,
        coo_rows=np.array(rows, dtype=np.intp), coo_cols=np.array(cols, dtype=np.intp),
        coo_vals=np.array(vals),
    )


def export_mip(tp: TargetProblem, path) -> TargetMatrix:
    """Write the free-support MILP of ``tp`` to ``path``."""
    if tp.support_mode != FREE:
        raise ValueError("MPS export is for free support; fixed support is solved in-repo")
    model = build_mip(tp)
    write_mps(model, path)
    return TargetMatrix(EXPORTED, None, labels=tp.g.labels,
                        extra={"path": str(path), "n_vars": model.n_vars, "n_rows": len(model.row_names)})


def read_solution(path) -> dict[str, float]:
    """``<name> <value>`` pairs; other lines (comments, headers) are skipped."""
    values = {}
    with open(path) as fh:
        for line in fh:
            tok = line.split()
            if len(tok) != 2 or tok[0].startswith("#"):
                continue
            try:
                values[tok[0]] = float(tok[1])
            except ValueError:
                continue
    return values


def import_solution(path, tp: TargetProblem) -> TargetMatrix:
    """Read an external solution for ``tp`` and verify it from scratch.

    Only ``L_*`` values are used; missing cells are zero. Raises
    ``TargetVerificationError`` naming the first violated condition.
    """
    values = read_solution(path)
    g = tp.g
    index = {lab: i for i, lab in enumerate(g.labels.tolist())}
    L = np.zeros_like(g.W)
    for vname, v in values.items():
        if not vname.startswith("L_"):
            continue
        try:
            _, src, dst = vname.split("_")
            L[index[int(src)], index[int(dst)]] = v
        except (ValueError, KeyError):
            raise MpsFormatError(f"unknown variable {vname!r}") from None
    # solver round-off below the indicator threshold means the edge is off
    L[np.abs(L) <= 1e-9] = 0.0
    bad = check_target(g.W, L, tp.targets, (tp.kappa_lower, tp.kappa_upper))
    if bad:
        raise TargetVerificationError(*bad[0])
    achieved = assortativity_all(WeightedDigraph(L, g.labels))
    obj = None
    if tp.objective.kind == "l1":
        obj = float(np.abs(g.W - L).sum())
    elif tp.objective.is_bound:
        C = covariance_weights(strength_profile(g), tp.objective.a, tp.objective.b)
        obj = float((C * L).sum()) * (1 if tp.objective.kind == "min" else -1)
    return TargetMatrix(FEASIBLE, L, achieved, obj, labels=g.labels)


def write_solution(path, names, values) -> None:
    """Write ``<name> <value>`` lines (the format ``import_solution`` reads)."""
    with open(path, "w") as fh:
        for name, v in zip(names, values):
            fh.write(f"{name} {float(v)!r}\n")
