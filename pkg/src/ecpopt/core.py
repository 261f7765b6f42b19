"""Core types shared by every module: search domain, run traces, config, RNG.

Reproducibility contract: all randomness flows through :class:`RngStream`,
a thin wrapper around numpy's PCG64 generator seeded with a 64-bit integer.
Identical seeds give bit-identical sample sequences. Derived streams (one per
benchmark repetition) come from :func:`derive_seed`, a SplitMix64 finalizer
chain, so adding problems or algorithms to an experiment never perturbs the
randomness of existing cells.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

__all__ = [
    "AttemptGuardExceeded",
    "BoxDomain",
    "EcpConfig",
    "EvalRecord",
    "RngStream",
    "Trace",
    "derive_seed",
    "fnv1a64",
    "regret",
    "splitmix64",
    "uniform_sample",
]

_MASK64 = (1 << 64) - 1


class AttemptGuardExceeded(RuntimeError):
    """A single round drew more candidates than the configured guard allows."""


def splitmix64(x: int) -> int:
    """One SplitMix64 finalizer step (public-domain constants)."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def fnv1a64(text: str) -> int:
    """FNV-1a 64-bit hash of a string; stable across runs and platforms."""
    h = 0xCBF29CE484222325
    for byte in text.encode("utf-8"):
        h = ((h ^ byte) * 0x100000001B3) & _MASK64
    return h


def derive_seed(seed: int, *parts: int | str) -> int:
    """Mix a base seed with integer or string parts into a fresh 64-bit seed.

    Each part is absorbed with one SplitMix64 finalizer step; strings are
    hashed with FNV-1a first. The chain is order-sensitive.
    """
    acc = splitmix64(seed & _MASK64)
    for part in parts:
        token = fnv1a64(part) if isinstance(part, str) else (int(part) & _MASK64)
        acc = splitmix64(acc ^ token)
    return acc


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.float64)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class BoxDomain:
    """Axis-aligned box search space with a non-empty interior."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self) -> None:
        lo = np.atleast_1d(np.asarray(self.lower, dtype=np.float64))
        hi = np.atleast_1d(np.asarray(self.upper, dtype=np.float64))
        if lo.ndim != 1 or hi.ndim != 1 or lo.shape != hi.shape or lo.size < 1:
            raise ValueError("lower and upper must be 1-D arrays of equal length >= 1")
        if not (np.isfinite(lo).all() and np.isfinite(hi).all()):
            raise ValueError("domain bounds must be finite")
        if not np.all(lo < hi):
            raise ValueError("domain must have non-empty interior (lower[i] < upper[i])")
        object.__setattr__(self, "lower", _readonly(lo))
        object.__setattr__(self, "upper", _readonly(hi))

    @classmethod
    def cube(cls, lo: float, hi: float, dim: int) -> "BoxDomain":
        return cls(np.full(dim, lo), np.full(dim, hi))

    @classmethod
    def from_bounds(cls, bounds: Sequence[Sequence[float]]) -> "BoxDomain":
        arr = np.asarray(bounds, dtype=np.float64)
        return cls(arr[:, 0], arr[:, 1])

    @property
    def dim(self) -> int:
        return int(self.lower.size)

    @property
    def widths(self) -> np.ndarray:
        return self.upper - self.lower

    def volume(self) -> float:
        return float(np.prod(self.widths))

    def diameter(self) -> float:
        return float(np.linalg.norm(self.widths))

    def contains(self, point: np.ndarray) -> bool:
        p = np.asarray(point, dtype=np.float64)
        if p.shape != self.lower.shape:
            return False
        return bool(np.all(p >= self.lower) and np.all(p <= self.upper))

    def bounds(self) -> list[tuple[float, float]]:
        return [(float(a), float(b)) for a, b in zip(self.lower, self.upper)]


class RngStream:
    """Deterministic uniform sampler over a box, seeded by a 64-bit integer.

    Backed by ``numpy.random.Generator(PCG64(seed))``. ``uniform_block(dom, m)``
    consumes exactly the same underlying stream as m successive ``uniform(dom)``
    calls (numpy fills C-order, one uint64 per double); a regression test
    freezes that equivalence, which the optimizer's buffered candidate drawing
    relies on.
    """

    def __init__(self, seed: int):
        self.seed = int(seed) & _MASK64
        self._gen = np.random.Generator(np.random.PCG64(self.seed))

    def uniform(self, domain: BoxDomain) -> np.ndarray:
        u = self._gen.random(domain.dim)
        return domain.lower + u * domain.widths

    def uniform_block(self, domain: BoxDomain, m: int) -> np.ndarray:
        u = self._gen.random((m, domain.dim))
        return domain.lower + u * domain.widths


def uniform_sample(domain: BoxDomain, rng: RngStream) -> np.ndarray:
    """Draw one point uniformly from the box, advancing the stream."""
    return rng.uniform(domain)


@dataclass(frozen=True)
class EvalRecord:
    """One objective evaluation: where, what, and the round's bookkeeping.

    ``attempts`` counts every candidate drawn in the round, including the one
    accepted; ``growths`` counts how many times the growth condition fired
    during the round; ``eps_at_eval`` is the acceptance radius coefficient in
    force when the point was accepted (0.0 sentinel for pure random search).
    """

    point: np.ndarray
    value: float
    round: int
    eps_at_eval: float
    attempts: int
    growths: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "point", _readonly(np.atleast_1d(self.point)))
        if self.round < 1 or self.attempts < 1 or self.growths < 0:
            raise ValueError("invalid record bookkeeping")


@dataclass(frozen=True)
class Trace:
    """Ordered history of one optimizer run (exactly budget-many records)."""

    records: tuple[EvalRecord, ...]
    config: dict
    seed: int
    best_index: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "records", tuple(self.records))
        if not self.records:
            raise ValueError("trace must contain at least one record")
        if not 0 <= self.best_index < len(self.records):
            raise ValueError("best_index out of range")

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[EvalRecord]:
        return iter(self.records)

    @property
    def best_record(self) -> EvalRecord:
        return self.records[self.best_index]

    @property
    def best_value(self) -> float:
        return self.best_record.value

    @property
    def best_point(self) -> np.ndarray:
        return self.best_record.point

    def values(self) -> np.ndarray:
        return np.array([r.value for r in self.records])

    def best_so_far(self) -> np.ndarray:
        return np.maximum.accumulate(self.values())

    def total_attempts(self) -> int:
        return sum(r.attempts for r in self.records)

    def to_json_dict(self) -> dict:
        return {
            "seed": self.seed,
            "config": self.config,
            "records": [
                {
                    "round": r.round,
                    "point": [float(v) for v in r.point],
                    "value": r.value,
                    "eps": r.eps_at_eval,
                    "attempts": r.attempts,
                    "growths": r.growths,
                }
                for r in self.records
            ],
            "best_index": self.best_index,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_json_dict(), **kwargs)

    @classmethod
    def from_json_dict(cls, doc: dict) -> "Trace":
        records = tuple(
            EvalRecord(
                point=np.asarray(r["point"], dtype=np.float64),
                value=float(r["value"]),
                round=int(r["round"]),
                eps_at_eval=float(r["eps"]),
                attempts=int(r["attempts"]),
                growths=int(r["growths"]),
            )
            for r in doc["records"]
        )
        return cls(records=records, config=dict(doc["config"]),
                   seed=int(doc["seed"]), best_index=int(doc["best_index"]))

    @classmethod
    def from_json(cls, text: str) -> "Trace":
        return cls.from_json_dict(json.loads(text))


def regret(trace: Trace, true_max: float, tol: float = 1e-9) -> float:
    """True maximum minus the best evaluated value; nonnegative.

    Raises ValueError if any recorded value exceeds ``true_max`` by more than
    ``tol`` (the supplied ground truth is then wrong).
    """
    best = trace.best_value
    if best > true_max + tol:
        raise ValueError(
            f"recorded value {best} exceeds claimed maximum {true_max} by more than {tol}"
        )
    return max(0.0, true_max - best)


@dataclass(frozen=True)
class EcpConfig:
    """Inputs of the acceptance-sampling optimizer.

    ``tau=None`` selects the budget/dimension rule
    ``tau_eff = max(1 + 1/(budget*d), tau_floor)``; an explicit ``tau`` must
    exceed 1 unless ``known_k`` is set, which pins ``tau`` to exactly 1.0 so
    the acceptance radius stays at ``eps1`` forever (the known-constant mode).
    """

    budget: int
    eps1: float = 1e-2
    tau: float | None = None
    tau_floor: float = 1.001
    c_growth: float = 1e3
    max_attempts_per_round: int = 10**7
    seed: int = 0
    known_k: bool = False

    def __post_init__(self) -> None:
        if self.budget < 1:
            raise ValueError("budget must be >= 1")
        if not self.eps1 > 0:
            raise ValueError("eps1 must be > 0")
        if not self.c_growth > 1:
            raise ValueError("c_growth must be > 1")
        if self.max_attempts_per_round < 1:
            raise ValueError("max_attempts_per_round must be >= 1")
        if self.known_k:
            if self.tau is not None and self.tau != 1.0:
                raise ValueError("known_k mode pins tau to exactly 1.0")
            object.__setattr__(self, "tau", 1.0)
        else:
            if self.tau is not None and not self.tau > 1:
                raise ValueError("tau must be > 1 (or None for the rule)")
            if not self.tau_floor > 1:
                raise ValueError("tau_floor must be > 1")

    def effective_tau(self, dim: int) -> float:
        if self.known_k:
            return 1.0
        if self.tau is not None:
            return float(self.tau)
        return max(1.0 + 1.0 / (self.budget * dim), self.tau_floor)

    def snapshot(self, dim: int) -> dict:
        return {
            "algorithm": "ecp",
            "budget": self.budget,
            "eps1": self.eps1,
            "tau": self.effective_tau(dim),
            "tau_floor": self.tau_floor,
            "c_growth": self.c_growth,
            "max_attempts_per_round": self.max_attempts_per_round,
            "seed": self.seed,
            "known_k": self.known_k,
        }
