"""Command-line harness: run experiments, theory diagnostics, parameter sweeps.

Exit codes: 0 on success, 1 on configuration errors, 2 when any cell of the
result table recorded nan (a repetition failed).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .analysis import (
    BoundInputs,
    growth_cap,
    hitting_time_bound,
    regret_upper_bound,
    rejection_prob_bound,
)
from .bench import (
    AlgorithmSpec,
    ExperimentSpec,
    ProblemSpec,
    rank,
    run_experiment,
    summarize,
    write_outputs,
)
from .core import EcpConfig, RngStream
from .objectives import builtin

__all__ = ["main"]


def _parse_algo(text: str, args) -> AlgorithmSpec:
    if text == "ecp":
        return AlgorithmSpec(kind="ecp", eps1=args.eps1, tau_floor=args.tau_floor,
                             c_growth=args.capc)
    if text == "prs":
        return AlgorithmSpec(kind="prs")
    if text.startswith("lipo:"):
        return AlgorithmSpec(kind="lipo", k=float(text.split(":", 1)[1]),
                             c_growth=args.capc)
    raise ValueError(f"unknown algorithm {text!r} (use ecp, prs, or lipo:K)")


def _inline_spec(args, sweep: dict | None = None) -> ExperimentSpec:
    if not args.objective:
        raise ValueError("either --spec or --objective is required")
    problems = tuple(ProblemSpec(name=name, dim=args.dim)
                     for name in args.objective)
    algorithms = tuple(_parse_algo(a, args) for a in (args.algo or ["ecp"]))
    return ExperimentSpec(problems=problems, algorithms=algorithms,
                          budget=args.budget, repetitions=args.reps,
                          base_seed=args.seed, output=args.out,
                          workers=args.workers, sweep=sweep)


def _cmd_run(args) -> int:
    if args.spec:
        spec = ExperimentSpec.from_json_file(args.spec)
    else:
        spec = _inline_spec(args)
    result = run_experiment(spec)
    print(summarize(result))
    if len({c.algorithm for c in result.cells}) >= 2:
        print()
        table = rank(result)
        for algo in table.algorithms:
            print(f"median rank {algo}: {table.medians[algo]:g}")
    out = args.out or spec.output
    if out:
        csv_path, json_path = write_outputs(result, out)
        print(f"\nwrote {csv_path} and {json_path}")
    return 2 if result.has_nan else 0


def _cmd_sweep(args) -> int:
    sweep = {}
    if args.eps1_grid:
        sweep["eps1"] = [float(v) for v in args.eps1_grid.split(",")]
    if args.tau_grid:
        sweep["tau_floor"] = [float(v) for v in args.tau_grid.split(",")]
    if args.capc_grid:
        sweep["c_growth"] = [float(v) for v in args.capc_grid.split(",")]
    if not sweep:
        raise ValueError("sweep needs at least one of --eps1-grid/--tau-grid/--capc-grid")
    if args.spec:
        base = ExperimentSpec.from_json_file(args.spec)
        spec = ExperimentSpec(problems=base.problems, algorithms=base.algorithms,
                              budget=base.budget, repetitions=base.repetitions,
                              base_seed=base.base_seed, output=args.out or base.output,
                              workers=args.workers, sweep=sweep)
    else:
        spec = _inline_spec(args, sweep=sweep)
    result = run_experiment(spec)
    for point in sorted({c.sweep_point for c in result.cells}):
        print(f"== sweep point: {point}")
        print(summarize(result, sweep_point=point))
        print()
    out = args.out or spec.output
    if out:
        csv_path, json_path = write_outputs(result, out)
        print(f"wrote {csv_path} and {json_path}")
    return 2 if result.has_nan else 0


def _cmd_diagnose(args) -> int:
    obj = builtin(args.objective[0], args.dim) if args.objective else None
    if obj is None:
        raise ValueError("--objective is required for diagnose")
    dom = obj.default_domain
    cfg = EcpConfig(budget=args.budget, eps1=args.eps1, tau_floor=args.tau_floor,
                    c_growth=args.capc, seed=args.seed)
    tau = cfg.effective_tau(dom.dim)
    probe = RngStream(cfg.seed).uniform_block(dom, 4096)
    vals = np.asarray(obj.batch(probe), dtype=float)
    delta = float(vals.max() - vals.min())
    inputs = BoundInputs(d=dom.dim, delta_range=delta, volume=dom.volume(),
                         eps1=cfg.eps1, tau=tau, n=cfg.budget)
    cap = growth_cap(inputs)
    rows = [
        ("objective", obj.name),
        ("dimension", dom.dim),
        ("volume", f"{dom.volume():.6g}"),
        ("diameter", f"{dom.diameter():.6g}"),
        ("value range (4096-sample estimate)", f"{delta:.6g}"),
        ("effective tau", f"{tau:.6g}"),
        ("growth cap (accept prob >= 1/2)", cap),
        ("rejection bound at t=n, v=0 (clamped)",
         f"{rejection_prob_bound(inputs, cfg.budget, 0, clamped=True):.6g}"),
        ("rejection bound at t=n, v=cap (clamped)",
         f"{rejection_prob_bound(inputs, cfg.budget, cap, clamped=True):.6g}"),
    ]
    if obj.known_lipschitz is not None:
        i_star = hitting_time_bound(obj.known_lipschitz, cfg.eps1, tau)
        rows.append(("lipschitz bound k", f"{obj.known_lipschitz:.6g}"))
        rows.append(("hitting-time bound", i_star))
        rows.append((f"regret bound (delta={args.confidence})",
                     f"{regret_upper_bound(obj.known_lipschitz, dom.diameter(), i_star, cfg.budget, args.confidence, dom.dim):.6g}"))
    width = max(len(r[0]) for r in rows)
    for name, value in rows:
        print(f"{name.ljust(width)}  {value}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ecpopt",
                                     description="global-optimization benchmark harness")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--spec", help="JSON experiment spec file")
        p.add_argument("--objective", action="append",
                       help="builtin objective name (repeatable)")
        p.add_argument("--dim", type=int, default=None)
        p.add_argument("--algo", action="append",
                       help="ecp | prs | lipo:K (repeatable)")
        p.add_argument("--budget", type=int, default=50)
        p.add_argument("--reps", type=int, default=100)
        p.add_argument("--eps1", type=float, default=1e-2)
        p.add_argument("--tau-floor", type=float, default=1.001)
        p.add_argument("--capc", type=float, default=1e3)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None)
        p.add_argument("--workers", type=int, default=1)

    run_p = sub.add_parser("run", help="run a fixed-budget experiment")
    common(run_p)
    run_p.set_defaults(func=_cmd_run)

    diag_p = sub.add_parser("diagnose", help="print theory bounds for a config")
    common(diag_p)
    diag_p.add_argument("--confidence", type=float, default=0.1)
    diag_p.set_defaults(func=_cmd_diagnose)

    sweep_p = sub.add_parser("sweep", help="grid over eps1 / tau_floor / C")
    common(sweep_p)
    sweep_p.add_argument("--eps1-grid", default=None)
    sweep_p.add_argument("--tau-grid", default=None)
    sweep_p.add_argument("--capc-grid", default=None)
    sweep_p.set_defaults(func=_cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
