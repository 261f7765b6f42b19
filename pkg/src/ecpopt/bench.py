"""Benchmark harness: fixed-budget repeated runs, aggregation, tables, ranks.

A cell is one (problem, algorithm, sweep point); every cell runs R repetitions
with per-repetition seeds derived from (base_seed, problem tag, algorithm tag,
rep index) through the SplitMix64 finalizer, so extending an experiment never
perturbs existing cells. Repetitions may run in worker processes; aggregation
is ordered by the spec, not by completion.
"""

from __future__ import annotations

import json
import math
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .core import BoxDomain, EcpConfig, derive_seed
from .objectives import Objective, builtin
from .optimizers import ecp_optimize, lipo_config, prs_optimize

__all__ = [
    "AlgorithmSpec",
    "BenchResult",
    "CellResult",
    "ExperimentSpec",
    "ProblemSpec",
    "RankTable",
    "rank",
    "run_experiment",
    "summarize",
]

CSV_COLUMNS = ("problem", "dim", "algorithm", "sweep_point", "budget", "reps",
               "mean_best", "std_best", "mean_regret", "mean_wall_ms",
               "mean_samples")


@dataclass(frozen=True)
class ProblemSpec:
    name: str
    dim: int | None = None
    domain: tuple | None = None  # ((lo, hi), ...) override

    @property
    def tag(self) -> str:
        return f"{self.name}:{self.dim if self.dim is not None else 'default'}"

    def resolve(self) -> Objective:
        obj = builtin(self.name, self.dim)
        if self.domain is not None:
            dom = BoxDomain.from_bounds(self.domain)
            if dom.dim != obj.dim:
                raise ValueError(f"domain override for {self.name} has wrong dimension")
            obj = Objective(name=obj.name, dim=obj.dim, default_domain=dom,
                            batch=obj.batch, known_max=None,
                            known_lipschitz=None)
        return obj


@dataclass(frozen=True)
class AlgorithmSpec:
    kind: str                      # "ecp" | "prs" | "lipo"
    eps1: float = 1e-2
    tau: float | None = None
    tau_floor: float = 1.001
    c_growth: float = 1e3
    k: float | None = None         # lipo only
    max_attempts_per_round: int = 10**7
    label: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("ecp", "prs", "lipo"):
            raise ValueError(f"unknown algorithm kind {self.kind!r}")
        if self.kind == "lipo" and (self.k is None or not self.k > 0):
            raise ValueError("lipo requires k > 0")

    @property
    def tag(self) -> str:
        if self.label:
            return self.label
        if self.kind == "lipo":
            return f"lipo(k={self.k:g})"
        return self.kind

    def run(self, objective: Objective, budget: int, seed: int):
        if self.kind == "prs":
            return prs_optimize(objective, objective.default_domain, budget, seed)
        if self.kind == "lipo":
            cfg = lipo_config(self.k, budget, seed,
                              c_growth=self.c_growth,
                              max_attempts_per_round=self.max_attempts_per_round)
        else:
            cfg = EcpConfig(budget=budget, eps1=self.eps1, tau=self.tau,
                            tau_floor=self.tau_floor, c_growth=self.c_growth,
                            max_attempts_per_round=self.max_attempts_per_round,
                            seed=seed)
        return ecp_optimize(objective, objective.default_domain, cfg)


@dataclass(frozen=True)
class ExperimentSpec:
    problems: tuple[ProblemSpec, ...]
    algorithms: tuple[AlgorithmSpec, ...]
    budget: int
    repetitions: int
    base_seed: int = 0
    output: str | None = None
    workers: int = 1
    sweep: dict | None = None      # {"eps1": [...], "tau_floor": [...], "c_growth": [...]}

    def __post_init__(self) -> None:
        if self.repetitions < 1 or self.budget < 1:
            raise ValueError("repetitions and budget must be >= 1")
        if not self.problems or not self.algorithms:
            raise ValueError("need at least one problem and one algorithm")

    @classmethod
    def from_json_dict(cls, doc: dict) -> "ExperimentSpec":
        problems = tuple(
            ProblemSpec(name=p["name"], dim=p.get("dim"),
                        domain=tuple(tuple(b) for b in p["domain"]) if p.get("domain") else None)
            for p in doc["problems"])
        algorithms = tuple(
            AlgorithmSpec(kind=a["kind"], eps1=a.get("eps1", 1e-2),
                          tau=a.get("tau"), tau_floor=a.get("tau_floor", 1.001),
                          c_growth=a.get("c_growth", 1e3), k=a.get("k"),
                          max_attempts_per_round=a.get("max_attempts_per_round", 10**7),
                          label=a.get("label"))
            for a in doc["algorithms"])
        return cls(problems=problems, algorithms=algorithms,
                   budget=int(doc["budget"]), repetitions=int(doc["repetitions"]),
                   base_seed=int(doc.get("base_seed", 0)),
                   output=doc.get("output"), workers=int(doc.get("workers", 1)),
                   sweep=doc.get("sweep"))

    @classmethod
    def from_json_file(cls, path: str | Path) -> "ExperimentSpec":
        return cls.from_json_dict(json.loads(Path(path).read_text()))

    def sweep_points(self) -> list[dict]:
        if not self.sweep:
            return [{}]
        keys = [k for k in ("eps1", "tau_floor", "c_growth") if k in self.sweep]
        unknown = set(self.sweep) - set(keys)
        if unknown:
            raise ValueError(f"sweep supports eps1/tau_floor/c_growth, got {unknown}")
        points = [{}]
        for key in keys:
            points = [dict(p, **{key: v}) for p in points for v in self.sweep[key]]
        return points


def _sweep_tag(point: dict) -> str:
    if not point:
        return "-"
    return ",".join(f"{k}={v:g}" for k, v in point.items())


@dataclass(frozen=True)
class CellResult:
    problem: str
    dim: int
    algorithm: str
    sweep_point: str
    budget: int
    reps: int
    per_rep_best: tuple[float, ...]
    mean_best: float
    std_best: float
    mean_regret: float
    mean_wall_ms: float
    mean_samples: float
    error: str | None = None

    @property
    def failed(self) -> bool:
        return self.error is not None


@dataclass(frozen=True)
class BenchResult:
    cells: tuple[CellResult, ...]
    budget: int
    repetitions: int
    base_seed: int

    @property
    def has_nan(self) -> bool:
        return any(c.failed for c in self.cells)

    def to_csv(self) -> str:
        lines = [",".join(CSV_COLUMNS)]
        for c in self.cells:
            lines.append(",".join([
                c.problem, str(c.dim), c.algorithm, f"\"{c.sweep_point}\"",
                str(c.budget), str(c.reps), _fmt(c.mean_best), _fmt(c.std_best),
                _fmt(c.mean_regret), _fmt(c.mean_wall_ms), _fmt(c.mean_samples),
            ]))
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "budget": self.budget,
            "repetitions": self.repetitions,
            "base_seed": self.base_seed,
            "cells": [
                {
                    "problem": c.problem, "dim": c.dim, "algorithm": c.algorithm,
                    "sweep_point": c.sweep_point, "budget": c.budget,
                    "reps": c.reps, "per_rep_best": list(c.per_rep_best),
                    "mean_best": c.mean_best, "std_best": c.std_best,
                    "mean_regret": c.mean_regret, "mean_wall_ms": c.mean_wall_ms,
                    "mean_samples": c.mean_samples, "error": c.error,
                }
                for c in self.cells
            ],
        }


def _fmt(x: float) -> str:
    return "nan" if math.isnan(x) else repr(float(x))


def _run_rep(problem: ProblemSpec, algo: AlgorithmSpec, point: dict,
             budget: int, seed: int) -> dict:
    """One repetition; returns best value, timing and sample count, or error."""
    try:
        objective = problem.resolve()
        algo_eff = algo
        if point and algo.kind != "prs":
            algo_eff = AlgorithmSpec(
                kind=algo.kind, eps1=point.get("eps1", algo.eps1), tau=algo.tau,
                tau_floor=point.get("tau_floor", algo.tau_floor),
                c_growth=point.get("c_growth", algo.c_growth), k=algo.k,
                max_attempts_per_round=algo.max_attempts_per_round,
                label=algo.label)
        start = time.perf_counter()
        trace = algo_eff.run(objective, budget, seed)
        wall_ms = (time.perf_counter() - start) * 1e3
        known_max = objective.known_max
        return {
            "best": trace.best_value,
            "wall_ms": wall_ms,
            "samples": trace.total_attempts(),
            "regret": (known_max - trace.best_value) if known_max is not None else math.nan,
            "error": None,
        }
    except Exception as exc:  # cell records nan instead of aborting the table
        return {"best": math.nan, "wall_ms": math.nan, "samples": math.nan,
                "regret": math.nan, "error": f"{type(exc).__name__}: {exc}"}


def _rep_task(args):
    return _run_rep(*args)


def run_experiment(spec: ExperimentSpec) -> BenchResult:
    """Run every (problem, algorithm, sweep point, repetition) and aggregate."""
    points = spec.sweep_points()
    tasks = []
    index = []
    for problem in spec.problems:
        for algo in spec.algorithms:
            for point in points:
                tag = _sweep_tag(point)
                for rep in range(spec.repetitions):
                    seed = derive_seed(spec.base_seed, problem.tag,
                                       f"{algo.tag}|{tag}", rep)
                    tasks.append((problem, algo, point, spec.budget, seed))
                    index.append((problem, algo, tag))

    if spec.workers > 1:
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            outcomes = list(pool.map(_rep_task, tasks, chunksize=4))
    else:
        outcomes = [_rep_task(t) for t in tasks]

    cells: list[CellResult] = []
    pos = 0
    for problem in spec.problems:
        dim = builtin(problem.name, problem.dim).dim
        for algo in spec.algorithms:
            for point in points:
                tag = _sweep_tag(point)
                reps = outcomes[pos:pos + spec.repetitions]
                pos += spec.repetitions
                errors = [r["error"] for r in reps if r["error"]]
                bests = tuple(r["best"] for r in reps)
                if errors:
                    cells.append(CellResult(
                        problem=problem.name, dim=dim, algorithm=algo.tag,
                        sweep_point=tag, budget=spec.budget, reps=spec.repetitions,
                        per_rep_best=bests, mean_best=math.nan, std_best=math.nan,
                        mean_regret=math.nan, mean_wall_ms=math.nan,
                        mean_samples=math.nan, error=errors[0]))
                    continue
                mean_best = statistics.fmean(bests)
                std_best = (statistics.stdev(bests) if len(bests) > 1 else 0.0)
                regrets = [r["regret"] for r in reps]
                mean_regret = (statistics.fmean(regrets)
                               if not any(math.isnan(v) for v in regrets) else math.nan)
                cells.append(CellResult(
                    problem=problem.name, dim=dim, algorithm=algo.tag,
                    sweep_point=tag, budget=spec.budget, reps=spec.repetitions,
                    per_rep_best=bests, mean_best=mean_best, std_best=std_best,
                    mean_regret=mean_regret,
                    mean_wall_ms=statistics.fmean(r["wall_ms"] for r in reps),
                    mean_samples=statistics.fmean(r["samples"] for r in reps)))
    return BenchResult(cells=tuple(cells), budget=spec.budget,
                       repetitions=spec.repetitions, base_seed=spec.base_seed)


def summarize(result: BenchResult, sweep_point: str | None = None) -> str:
    """Render rows = problems, columns = algorithms, cells "mean (std)" at two
    decimals, with a Top-1 footer; ties (after rounding) award every winner."""
    if not result.cells:
        raise ValueError("empty result")
    if sweep_point is None:
        sweep_point = result.cells[0].sweep_point
    cells = [c for c in result.cells if c.sweep_point == sweep_point]
    problems = list(dict.fromkeys(c.problem for c in cells))
    algorithms = list(dict.fromkeys(c.algorithm for c in cells))
    lookup = {(c.problem, c.algorithm): c for c in cells}
    top1 = {a: 0 for a in algorithms}
    rows = []
    for p in problems:
        entries = []
        rounded = {}
        for a in algorithms:
            c = lookup.get((p, a))
            if c is None or c.failed:
                entries.append("nan (nan)")
                rounded[a] = None
            else:
                entries.append(f"{c.mean_best:.2f} ({c.std_best:.2f})")
                rounded[a] = round(c.mean_best, 2)
        finite = [v for v in rounded.values() if v is not None]
        if finite:
            best = max(finite)
            for a in algorithms:
                if rounded[a] is not None and rounded[a] == best:
                    top1[a] += 1
        rows.append((p, entries))
    widths = [max(len("problem"), *(len(p) for p, _ in rows))]
    for j, a in enumerate(algorithms):
        widths.append(max(len(a), len("# Top-1"),
                          *(len(r[1][j]) for r in rows), len(str(top1[a]))))
    def line(items):
        return "  ".join(s.ljust(w) for s, w in zip(items, widths))
    out = [line(["problem"] + algorithms)]
    for p, entries in rows:
        out.append(line([p] + entries))
    out.append(line(["# Top-1"] + [str(top1[a]) for a in algorithms]))
    return "\n".join(out)


@dataclass(frozen=True)
class RankTable:
    algorithms: tuple[str, ...]
    problems: tuple[str, ...]
    ranks: dict  # algorithm -> tuple of ranks, aligned with problems
    medians: dict  # algorithm -> float

    def to_csv(self) -> str:
        lines = ["algorithm,problem,rank"]
        for a in self.algorithms:
            for p, r in zip(self.problems, self.ranks[a]):
                lines.append(f"{a},{p},{r}")
        lines.append("algorithm,median_rank,")
        for a in self.algorithms:
            lines.append(f"{a},{self.medians[a]},")
        return "\n".join(lines) + "\n"


def rank(result: BenchResult, sweep_point: str | None = None) -> RankTable:
    """Per-problem algorithm ranks by mean best (1 = best, ties share the
    average rank), plus the per-algorithm median rank."""
    if sweep_point is None:
        sweep_point = result.cells[0].sweep_point
    cells = [c for c in result.cells if c.sweep_point == sweep_point]
    problems = list(dict.fromkeys(c.problem for c in cells))
    algorithms = list(dict.fromkeys(c.algorithm for c in cells))
    if len(algorithms) < 2:
        raise ValueError("ranking needs at least two algorithms")
    lookup = {(c.problem, c.algorithm): c for c in cells}
    ranks: dict[str, list[float]] = {a: [] for a in algorithms}
    for p in problems:
        means = []
        for a in algorithms:
            c = lookup.get((p, a))
            means.append(-math.inf if (c is None or c.failed) else c.mean_best)
        # average ranks over ties
        values = sorted(set(means), reverse=True)
        rank_of = {}
        next_rank = 1
        for v in values:
            idx = [i for i, m in enumerate(means) if m == v]
            avg = next_rank + (len(idx) - 1) / 2.0
            for i in idx:
                rank_of[i] = avg
            next_rank += len(idx)
        for i, a in enumerate(algorithms):
            ranks[a].append(rank_of[i])
    return RankTable(
        algorithms=tuple(algorithms), problems=tuple(problems),
        ranks={a: tuple(r) for a, r in ranks.items()},
        medians={a: float(statistics.median(r)) for a, r in ranks.items()})


def write_outputs(result: BenchResult, out: str | Path) -> tuple[Path, Path]:
    """Write <out>.csv and <out>.json (suffix replaced if already given)."""
    base = Path(out)
    if base.suffix in (".csv", ".json"):
        base = base.with_suffix("")
    csv_path = base.with_suffix(".csv")
    json_path = base.with_suffix(".json")
    csv_path.parent.mkdir(parents=True, exist_ok=True)
    csv_path.write_text(result.to_csv())
    json_path.write_text(json.dumps(result.to_json_dict(), indent=2))
    return csv_path, json_path
