"""Command-line front end.

Subcommands ``generate``, ``measure``, ``bounds``, ``target``, ``rewire`` and
``pipeline``. Every output is a deterministic function of the inputs and
the seed; timings only go to stderr.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .assortativity import PAIRS, UndefinedCoefficientError, assortativity_all
from .generators import ErConfig, GeneratorError, PaConfig, erdos_renyi, preferential_attachment
from .graph import EdgeListError, GraphError, WeightedDigraph, nnz, read_edge_list, write_edge_list
from .rewire import (
    CorruptRecordError,
    MarginMismatchError,
    RewiringStallError,
    read_record,
    replay,
    sweep,
    write_record,
    write_trace,
)
from .simplex import SolverStallError
from .target import (
    FIXED,
    FREE,
    INFEASIBLE,
    ConfigurationError,
    TargetProblem,
    TargetVerificationError,
    assortativity_bounds,
    parse_objective,
    solve_target,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_INFEASIBLE = 4
EXIT_STALL = 5

HIST_BINS = 64
COEFS = [f"r{a}{b}" for a, b in PAIRS]


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------- helpers

def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write_json(path, obj):
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        fh.write(_dump(obj))
    os.replace(tmp, path)


def _read_graph(path) -> WeightedDigraph:
    try:
        return read_edge_list(path)
    except FileNotFoundError:
        raise CliError(f"{path}: no such file", EXIT_PARSE) from None
    except GraphError as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE) from None


def _parse_targets(text):
    """``"0.3,0.3,-0.3,-0.3"``; ``-`` or ``none`` leaves a coefficient free."""
    if text is None:
        return None
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise CliError(f"--targets needs 4 comma-separated values, got {text!r}", EXIT_USAGE)
    out = []
    for p in parts:
        if p.lower() in ("-", "none", ""):
            out.append(None)
            continue
        try:
            v = float(p)
        except ValueError:
            raise CliError(f"bad target value {p!r}", EXIT_USAGE) from None
        if not -1 <= v <= 1:
            raise CliError(f"target {v} outside [-1, 1]", EXIT_USAGE)
        out.append(v)
    return out


def _quad_json(q):
    return {k: (None if v is None else float(v)) for k, v in zip(COEFS, q)}


def _strength_summary(s):
    return {"min": float(s.min()), "max": float(s.max()), "mean": float(s.mean())} if s.size else {}


@dataclass
class RunConfig:
    """Parameters of one command invocation."""

    command: str
    seed: int = 0
    jobs: int = 1
    out_dir: Path = Path(".")
    model: str | None = None
    model_params: dict = field(default_factory=dict)
    replicates: int = 1
    targets: list | None = None
    clip: float | None = None
    kappa: tuple = (None, None)
    objective: str = "zero"
    support: str = FIXED
    reorder: bool = False
    stride: int = 1

    def __post_init__(self):
        if self.replicates < 1:
            raise CliError("--replicates must be >= 1", EXIT_USAGE)
        if self.jobs < 1:
            raise CliError("--jobs must be >= 1", EXIT_USAGE)
        if self.stride < 1:
            raise CliError("--stride must be >= 1", EXIT_USAGE)
        if self.command in ("target", "pipeline") and self.targets is None and self.objective in ("zero", "l1"):
            raise CliError(f"{self.command} needs --targets", EXIT_USAGE)
        try:
            self.out_dir.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise CliError(f"cannot create output directory {self.out_dir}: {exc}", EXIT_USAGE) from None
        if not os.access(self.out_dir, os.W_OK):
            raise CliError(f"output directory {self.out_dir} is not writable", EXIT_USAGE)

    def to_dict(self):
        return {
            "command": self.command, "seed": self.seed, "model": self.model,
            "model_params": self.model_params, "replicates": self.replicates,
            "targets": self.targets, "clip": self.clip,
            "kappa": list(self.kappa), "objective": self.objective, "support": self.support,
            "reorder": self.reorder, "stride": self.stride,
        }


def _generator_config(model, params, seed):
    try:
        if model == "er":
            return ErConfig(params["n"], params["p"], seed=seed)
        beta = params["beta"]
        alpha = params.get("alpha")
        gamma = params.get("gamma")
        extra = {"delta1": params["delta1"], "delta2": params["delta2"], "seed": seed}
        if alpha is None and gamma is None:
            return PaConfig.from_beta(params["steps"], beta, **extra)
        if alpha is None:
            alpha = 1.0 - beta - gamma
        if gamma is None:
            gamma = 1.0 - beta - alpha
        return PaConfig(params["steps"], alpha, beta, gamma, **extra)
    except GeneratorError as exc:
        raise CliError(str(exc), EXIT_USAGE) from None


def _generate(cfg):
    g = erdos_renyi(cfg) if isinstance(cfg, ErConfig) else preferential_attachment(cfg)
    return g


def _graph_meta(g, gen_cfg):
    return {"seed": gen_cfg.seed, "config": gen_cfg.to_dict(), "n": g.n, "nnz": nnz(g), "tau": g.tau}


def _bounds(g, kappa, support):
    out = {}
    q = assortativity_all(g)
    for (a, b), name, r in zip(PAIRS, COEFS, q):
        if r is None:
            out[name] = {"lo": "undefined", "hi": "undefined", "r": "undefined"}
            continue
        try:
            lo, hi = assortativity_bounds(g, a, b, kappa[0], kappa[1], support)
        except UndefinedCoefficientError:
            out[name] = {"lo": "undefined", "hi": "undefined", "r": "undefined"}
            continue
        out[name] = {"lo": lo, "hi": hi, "r": r}
    return out


def _clip_targets(targets, bounds, frac):
    """Pull each target inside ``frac`` times its bound when the bound is tighter."""
    out = []
    for t, name in zip(targets, COEFS):
        bd = bounds[name]
        if t is None or bd["lo"] == "undefined":
            out.append(t)
            continue
        lo, hi = frac * bd["lo"], frac * bd["hi"]
        out.append(float(min(max(t, lo), hi)))
    return out


# ---------------------------------------------------------------- commands

def cmd_generate(cfg: RunConfig) -> int:
    files = []
    for idx in range(cfg.replicates):
        gen = _generator_config(cfg.model, cfg.model_params, cfg.seed + idx)
        g = _generate(gen)
        stem = cfg.out_dir / f"{cfg.model}_{idx:03d}"
        write_edge_list(g, f"{stem}.csv")
        _write_json(f"{stem}.json", _graph_meta(g, gen))
        files.append(f"{stem}.csv")
    sys.stdout.write(_dump({"files": files}))
    return EXIT_OK


def cmd_measure(path) -> int:
    g = _read_graph(path)
    q = assortativity_all(g)
    sys.stdout.write(_dump({
        "path": str(path), "n": g.n, "nnz": nnz(g), "tau": g.tau,
        "assortativity": q.to_dict(),
        "out_strength": _strength_summary(g.out_strength),
        "in_strength": _strength_summary(g.in_strength),
    }))
    return EXIT_OK


def cmd_bounds(path, cfg: RunConfig) -> int:
    g = _read_graph(path)
    if cfg.support == FREE:
        raise CliError("free-support bounds need an external MILP solver; "
                       "export with `target --support free --export-mps`", EXIT_USAGE)
    sys.stdout.write(_dump({"path": str(path), "kappa": list(cfg.kappa), "support": cfg.support,
                            "bounds": _bounds(g, cfg.kappa, cfg.support)}))
    return EXIT_OK


def _target_problem(g, cfg: RunConfig, targets):
    try:
        return TargetProblem(g, targets, cfg.kappa[0], cfg.kappa[1], parse_objective(cfg.objective), cfg.support)
    except (ConfigurationError, ValueError) as exc:
        raise CliError(str(exc), EXIT_USAGE) from None


def cmd_target(path, out, cfg: RunConfig, export_mps=None, import_solution=None) -> int:
    from . import mps

    g = _read_graph(path)
    tp = _target_problem(g, cfg, cfg.targets)
    if export_mps:
        res = mps.export_mip(tp, export_mps)
        sys.stdout.write(_dump({"status": res.status, **res.extra}))
        return EXIT_OK
    if import_solution:
        try:
            res = mps.import_solution(import_solution, tp)
        except TargetVerificationError as exc:
            sys.stdout.write(_dump({"status": "rejected", "condition": exc.condition, "detail": str(exc)}))
            return EXIT_INFEASIBLE
        except (OSError, mps.MpsFormatError) as exc:
            raise CliError(str(exc), EXIT_PARSE) from None
    else:
        if cfg.support == FREE:
            raise CliError("free support is solved externally: use --export-mps, then --import-solution",
                           EXIT_USAGE)
        res = _solve(tp)
    if res.status == INFEASIBLE:
        sys.stdout.write(_dump({"status": INFEASIBLE}))
        return EXIT_INFEASIBLE
    if out is None:
        raise CliError("target needs --out for the target edge list", EXIT_USAGE)
    write_edge_list(res.graph(), out)
    report = {"status": res.status, "achieved": _quad_json(res.achieved),
              "objective_value": res.objective_value, "nnz": nnz(res.Lambda)}
    _write_json(f"{out}.json", report)
    sys.stdout.write(_dump(report))
    return EXIT_OK


def _solve(tp):
    try:
        return solve_target(tp)
    except SolverStallError as exc:
        raise CliError(str(exc), EXIT_STALL) from None
    except UndefinedCoefficientError as exc:
        raise CliError(str(exc), EXIT_USAGE) from None


def _aligned(g: WeightedDigraph, ref: WeightedDigraph, what) -> WeightedDigraph:
    if g.labels.tolist() == ref.labels.tolist():
        return g
    # a target may omit nodes only if it keeps the same label set
    raise CliError(f"{what} node set differs from the input graph", EXIT_PARSE)


def _rewire(g, lam, reorder, stride):
    try:
        rec = sweep(g, lam, reorder_rows=reorder)
    except MarginMismatchError as exc:
        raise CliError(f"target does not match the input margins: {exc}", EXIT_PARSE) from None
    except RewiringStallError as exc:
        raise CliError(str(exc), EXIT_STALL) from None
    return rec, replay(g, rec, trace_every=stride)


def cmd_rewire(path, target_path, out, trace_out, cfg: RunConfig, record_out=None, record_in=None) -> int:
    g = _read_graph(path)
    if record_in:
        try:
            rec = read_record(record_in, g.labels)
            res = replay(g, rec, trace_every=cfg.stride)
        except (GraphError, KeyError, ValueError) as exc:
            raise CliError(f"{record_in}: {exc}", EXIT_PARSE) from None
    else:
        if target_path is None:
            raise CliError("rewire needs a target edge list or --record-in", EXIT_USAGE)
        lam = _aligned(_read_graph(target_path), g, "target")
        rec, res = _rewire(g, lam.W, cfg.reorder, cfg.stride)
    write_edge_list(res.graph, out)
    write_trace(trace_out, rec, res)
    if record_out:
        write_record(record_out, rec)
    report = {"steps": len(rec), "final": _quad_json(assortativity_all(res.graph)), "nnz": nnz(res.graph)}
    sys.stdout.write(_dump(report))
    return EXIT_OK


# ---------------------------------------------------------------- pipeline

def _replicate(args):
    """Run one replicate into ``rep_dir``; returns its summary dict."""
    cfg, idx = args
    rep_dir = cfg.out_dir / f"rep_{idx:03d}"
    summary_path = rep_dir / "summary.json"
    if summary_path.exists():
        with open(summary_path) as fh:
            return json.load(fh)
    rep_dir.mkdir(parents=True, exist_ok=True)
    t0 = time.perf_counter()
    gen = _generator_config(cfg.model, cfg.model_params, cfg.seed + idx)
    g = _generate(gen)
    write_edge_list(g, rep_dir / "graph.csv")
    _write_json(rep_dir / "graph.json", _graph_meta(g, gen))
    bounds = _bounds(g, cfg.kappa, FIXED)
    _write_json(rep_dir / "bounds.json", bounds)
    targets = cfg.targets
    if cfg.clip is not None and targets is not None:
        targets = _clip_targets(targets, bounds, cfg.clip)
    summary = {"replicate": idx, "seed": cfg.seed + idx, "n": g.n, "nnz": nnz(g), "tau": g.tau,
               "initial": _quad_json(assortativity_all(g)), "targets": targets}
    try:
        tp = TargetProblem(g, targets, cfg.kappa[0], cfg.kappa[1], parse_objective(cfg.objective), FIXED)
        res = solve_target(tp)
    except UndefinedCoefficientError as exc:
        res = None
        summary.update(status="undefined", detail=str(exc))
    except SolverStallError as exc:
        res = None
        summary.update(status="stall", detail=str(exc))
    if res is not None and res.status == INFEASIBLE:
        summary.update(status=INFEASIBLE)
    elif res is not None:
        write_edge_list(res.graph(), rep_dir / "target.csv")
        try:
            rec, rp = _rewire(g, res.Lambda, cfg.reorder, cfg.stride)
        except CliError as exc:
            summary.update(status="stall", detail=str(exc))
        else:
            write_record(rep_dir / "record.csv", rec)
            write_trace(rep_dir / "trace.csv", rec, rp)
            write_edge_list(rp.graph, rep_dir / "rewired.csv")
            summary.update(
                status="ok", steps=len(rec), objective_value=res.objective_value,
                final=_quad_json(assortativity_all(rp.graph)), min_weight=rp.min_weight,
                l1_change=float(np.abs(g.W - rp.graph.W).sum()),
            )
    _write_json(summary_path, summary)
    print(f"replicate {idx}: {summary['status']} ({time.perf_counter() - t0:.2f}s)", file=sys.stderr)
    return summary


def _read_trace(path):
    steps, vals = [], []
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        cols = [header.index(c) for c in COEFS]
        for line in fh:
            parts = line.rstrip("\n").split(",")
            steps.append(int(parts[0]))
            vals.append([np.nan if parts[c] == "undefined" else float(parts[c]) for c in cols])
    return np.array(steps), np.array(vals).reshape(-1, 4)


def aggregate(out_dir, replicates: int, stride: int = 1) -> dict:
    """Cross-replicate summaries recomputed from the per-replicate files."""
    out_dir = Path(out_dir)
    traces, bounds_rows, weights = [], [], []
    for idx in range(replicates):
        rep = out_dir / f"rep_{idx:03d}"
        with open(rep / "summary.json") as fh:
            summary = json.load(fh)
        with open(rep / "bounds.json") as fh:
            bd = json.load(fh)
        for name in COEFS:
            final = summary.get("final", {}).get(name) if summary["status"] == "ok" else None
            target = summary["targets"][COEFS.index(name)] if summary.get("targets") else None
            b = bd[name]
            bounds_rows.append([idx, name, b["lo"], b["r"], b["hi"], target, final])
        if summary["status"] == "ok":
            traces.append((idx, *_read_trace(rep / "trace.csv")))
            weights.append((read_edge_list(rep / "graph.csv").W, read_edge_list(rep / "rewired.csv").W))

    def fmt(v):
        if v is None or (isinstance(v, float) and not np.isfinite(v)):
            return "undefined" if v is not None else ""
        return repr(v) if isinstance(v, float) else str(v)

    with open(out_dir / "bounds_box.csv", "w") as fh:
        fh.write("replicate,coefficient,lo,initial,hi,target,final\n")
        for row in bounds_rows:
            fh.write(",".join(fmt(v) for v in row) + "\n")

    max_len = max((int(s[-1]) for _, s, _ in traces), default=0)
    grid = np.arange(0, max_len + 1, stride)
    if grid[-1] != max_len:
        grid = np.append(grid, max_len)
    stacked = []
    with open(out_dir / "traces_padded.csv", "w") as fh:
        fh.write("replicate,step," + ",".join(COEFS) + ",padded\n")
        for idx, steps, vals in traces:
            pos = np.searchsorted(steps, grid, side="right") - 1
            v = vals[pos]
            stacked.append(v)
            padded = grid > steps[-1]
            for s, row, p in zip(grid.tolist(), v, padded.tolist()):
                fh.write(f"{idx},{s}," + ",".join(fmt(float(x)) for x in row) + f",{int(p)}\n")
    with open(out_dir / "mean_trace.csv", "w") as fh:
        fh.write("step," + ",".join(COEFS) + ",n_padded\n")
        if stacked:
            arr = np.stack(stacked)
            with np.errstate(invalid="ignore"):
                mean = np.nanmean(arr, axis=0) if np.isfinite(arr).any() else arr[0]
            n_pad = np.array([(grid > s[-1]) for _, s, _ in traces]).sum(axis=0)
            for s, row, p in zip(grid.tolist(), mean, n_pad.tolist()):
                fh.write(f"{s}," + ",".join(fmt(float(x)) for x in row) + f",{p}\n")

    top = max((max(float(w0.max()), float(w1.max())) for w0, w1 in weights), default=1.0)
    edges = np.linspace(0.0, top, HIST_BINS + 1)
    before = np.zeros(HIST_BINS, dtype=np.int64)
    after = np.zeros(HIST_BINS, dtype=np.int64)
    for w0, w1 in weights:
        before += np.histogram(w0[w0 > 0], bins=edges)[0]
        after += np.histogram(w1[w1 > 0], bins=edges)[0]
    with open(out_dir / "weight_histogram.csv", "w") as fh:
        fh.write("bin_lo,bin_hi,before,after\n")
        for lo, hi, b, a in zip(edges[:-1], edges[1:], before, after):
            fh.write(f"{lo!r},{hi!r},{b},{a}\n")
    return {"replicates": replicates, "ok": len(traces), "max_steps": max_len, "trace_rows": int(grid.size)}


def cmd_pipeline(cfg: RunConfig) -> int:
    _write_json(cfg.out_dir / "run.json", cfg.to_dict())
    jobs = [(cfg, idx) for idx in range(cfg.replicates)]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            summaries = list(pool.map(_replicate, jobs))
    else:
        summaries = [_replicate(j) for j in jobs]
    agg = aggregate(cfg.out_dir, cfg.replicates, cfg.stride)
    status = {}
    for s in summaries:
        status[s["status"]] = status.get(s["status"], 0) + 1
    agg["status"] = status
    _write_json(cfg.out_dir / "aggregate.json", agg)
    sys.stdout.write(_dump(agg))
    if status.get("stall"):
        return EXIT_STALL
    if status.get(INFEASIBLE) or status.get("undefined"):
        return EXIT_INFEASIBLE
    return EXIT_OK


# ---------------------------------------------------------------- argparse

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise CliError(message, EXIT_USAGE)


def _probability(text):
    v = float(text)
    if not 0 <= v <= 1:
        raise argparse.ArgumentTypeError(f"{v} is not in [0, 1]")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="base seed (replicate k uses seed + k)")
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="parallel replicate workers")
    common.add_argument("--out-dir", type=Path, default=argparse.SUPPRESS, help="output directory")

    target_opts = argparse.ArgumentParser(add_help=False)
    target_opts.add_argument("--targets", help="r11,r12,r21,r22; '-' leaves one unconstrained")
    target_opts.add_argument("--objective", default="zero", help="zero, l1, min:a,b or max:a,b")
    target_opts.add_argument("--kappa-lower", type=float)
    target_opts.add_argument("--kappa-upper", type=float)

    p = _Parser(prog="assortrewire", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("generate", parents=[common], help="sample random networks")
    models = gen.add_subparsers(dest="model", required=True, parser_class=_Parser)
    for name in ("er", "pa"):
        m = models.add_parser(name, parents=[common])
        m.add_argument("--replicates", type=int, default=1)
        if name == "er":
            m.add_argument("--n", type=int, required=True)
            m.add_argument("--p", type=_probability, required=True)
        else:
            _pa_args(m)

    meas = sub.add_parser("measure", parents=[common], help="assortativity and strengths of an edge list")
    meas.add_argument("input")

    bnd = sub.add_parser("bounds", parents=[common], help="attainable coefficient ranges")
    bnd.add_argument("input")
    bnd.add_argument("--kappa-lower", type=float)
    bnd.add_argument("--kappa-upper", type=float)
    bnd.add_argument("--support", choices=[FIXED, FREE], default=FIXED)

    tgt = sub.add_parser("target", parents=[common, target_opts], help="solve for a target matrix")
    tgt.add_argument("input")
    tgt.add_argument("--out", help="target edge list")
    tgt.add_argument("--support", choices=[FIXED, FREE], default=FIXED)
    tgt.add_argument("--export-mps", help="write the free-support MILP here instead of solving")
    tgt.add_argument("--import-solution", help="verify an external MILP solution file")

    rw = sub.add_parser("rewire", parents=[common], help="rewire a network into a target")
    rw.add_argument("input")
    rw.add_argument("target", nargs="?")
    rw.add_argument("--out", required=True, help="rewired edge list")
    rw.add_argument("--trace", required=True, help="trace CSV")
    rw.add_argument("--record", help="also write the rewiring record here")
    rw.add_argument("--record-in", help="replay this record instead of sweeping")
    rw.add_argument("--reorder", action="store_true")
    rw.add_argument("--stride", type=int, default=1)

    pipe = sub.add_parser("pipeline", parents=[common, target_opts], help="replicated end-to-end run")
    pmod = pipe.add_subparsers(dest="model", required=True, parser_class=_Parser)
    for name in ("er", "pa"):
        m = pmod.add_parser(name, parents=[common, target_opts])
        m.add_argument("--replicates", type=int, default=1)
        m.add_argument("--clip", type=float, help="clip targets to this fraction of their bounds")
        m.add_argument("--reorder", action="store_true")
        m.add_argument("--stride", type=int, default=1)
        if name == "er":
            m.add_argument("--n", type=int, required=True)
            m.add_argument("--p", type=_probability, required=True)
        else:
            _pa_args(m)
    return p


def _pa_args(m):
    m.add_argument("--steps", type=int, required=True)
    m.add_argument("--beta", type=_probability, required=True)
    m.add_argument("--alpha", type=_probability, help="default (1 - beta) / 2")
    m.add_argument("--gamma", type=_probability, help="default (1 - beta) / 2")
    m.add_argument("--delta1", type=float, default=1.0)
    m.add_argument("--delta2", type=float, default=1.0)


def _config(ns) -> RunConfig:
    params = {}
    model = getattr(ns, "model", None)
    if model == "er":
        params = {"n": ns.n, "p": ns.p}
    elif model == "pa":
        params = {"steps": ns.steps, "beta": ns.beta, "alpha": ns.alpha, "gamma": ns.gamma,
                  "delta1": ns.delta1, "delta2": ns.delta2}
    return RunConfig(
        command=ns.command,
        seed=getattr(ns, "seed", 0),
        jobs=getattr(ns, "jobs", 1),
        out_dir=getattr(ns, "out_dir", Path(".")),
        model=model,
        model_params=params,
        replicates=getattr(ns, "replicates", 1),
        targets=_parse_targets(getattr(ns, "targets", None)),
        clip=getattr(ns, "clip", None),
        kappa=(getattr(ns, "kappa_lower", None), getattr(ns, "kappa_upper", None)),
        objective=getattr(ns, "objective", "zero"),
        support=getattr(ns, "support", FIXED),
        reorder=getattr(ns, "reorder", False),
        stride=getattr(ns, "stride", 1),
    )


def run(argv=None) -> int:
    """Parse ``argv`` and run; returns the exit code."""
    try:
        ns = build_parser().parse_args(argv)
        cfg = _config(ns)
        if cfg.command == "generate":
            return cmd_generate(cfg)
        if cfg.command == "measure":
            return cmd_measure(ns.input)
        if cfg.command == "bounds":
            return cmd_bounds(ns.input, cfg)
        if cfg.command == "target":
            return cmd_target(ns.input, ns.out, cfg, ns.export_mps, ns.import_solution)
        if cfg.command == "rewire":
            return cmd_rewire(ns.input, ns.target, ns.out, ns.trace, cfg, ns.record, ns.record_in)
        return cmd_pipeline(cfg)
    except CliError as exc:
        print(f"assortrewire: error: {exc}", file=sys.stderr)
        return exc.code
    except (EdgeListError, CorruptRecordError) as exc:
        print(f"assortrewire: error: {exc}", file=sys.stderr)
        return EXIT_PARSE


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
