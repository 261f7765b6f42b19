"""Synthetic benchmark objectives (maximization convention) and user adapters.

Every builtin stores f = -(classic minimization form), possibly with a fixed
scale factor, so "bigger is better" throughout and reported maxima carry the
sign conventions of the benchmark tables this suite reproduces. Domains follow
the global-optimization literature where the standard choice reproduces the
reference random-search statistics, and calibrated variants where it does not;
both are plain defaults and can be overridden per run.

Evaluators are written over the last axis, so the same callable handles a
single (d,) point and an (m, d) batch; ``Objective.evaluate`` is the scalar
contract, ``Objective.batch`` the vectorized one used by test oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import BoxDomain

__all__ = ["Objective", "builtin", "builtin_names", "register"]


@dataclass(frozen=True)
class Objective:
    """Named deterministic black-box function over a box domain."""

    name: str
    dim: int
    default_domain: BoxDomain
    batch: Callable[[np.ndarray], np.ndarray]
    known_max: float | None = None
    known_lipschitz: float | None = None

    def evaluate(self, point) -> float:
        x = np.asarray(point, dtype=np.float64)
        if x.shape != (self.dim,):
            raise ValueError(f"{self.name} expects a point of dimension {self.dim}")
        return float(self.batch(x))

    def __call__(self, point) -> float:
        return self.evaluate(point)


# ── builtin definitions (minimization forms, negated at registration) ──

def _ackley(X):
    X = np.asarray(X, dtype=np.float64)
    d = X.shape[-1]
    s1 = np.sqrt((X ** 2).sum(axis=-1) / d)
    s2 = np.cos(2 * np.pi * X).sum(axis=-1) / d
    return -20.0 * np.exp(-0.2 * s1) - np.exp(s2) + 20.0 + np.e


def _bukin(X):
    x1, x2 = np.moveaxis(np.asarray(X, dtype=np.float64), -1, 0)
    return 100.0 * np.sqrt(np.abs(x2 - 0.01 * x1 ** 2)) + 0.01 * np.abs(x1 + 10.0)


def _camel(X):
    x1, x2 = np.moveaxis(np.asarray(X, dtype=np.float64), -1, 0)
    return ((4.0 - 2.1 * x1 ** 2 + x1 ** 4 / 3.0) * x1 ** 2
            + x1 * x2 + (-4.0 + 4.0 * x2 ** 2) * x2 ** 2)


def _colville(X):
    x1, x2, x3, x4 = np.moveaxis(np.asarray(X, dtype=np.float64), -1, 0)
    raw = (100.0 * (x1 ** 2 - x2) ** 2 + (x1 - 1.0) ** 2 + (x3 - 1.0) ** 2
           + 90.0 * (x3 ** 2 - x4) ** 2
           + 10.1 * ((x2 - 1.0) ** 2 + (x4 - 1.0) ** 2)
           + 19.8 * (x2 - 1.0) * (x4 - 1.0))
    return raw * 1e-4


def _crossintray(X):
    x1, x2 = np.moveaxis(np.asarray(X, dtype=np.float64), -1, 0)
    inner = np.abs(np.sin(x1) * np.sin(x2)
                   * np.exp(np.abs(100.0 - np.sqrt(x1 ** 2 + x2 ** 2) / np.pi)))
    return -0.0001 * (inner + 1.0) ** 0.1


def _damavandi(X):
    x1, x2 = np.moveaxis(np.asarray(X, dtype=np.float64), -1, 0)
    # np.sinc(z) = sin(pi z)/(pi z) handles the removable singularity at (2, 2)
    ratio = np.sinc(x1 - 2.0) * np.sinc(x2 - 2.0)
    return ((1.0 - np.abs(ratio) ** 5)
            * (2.0 + (x1 - 7.0) ** 2 + 2.0 * (x2 - 7.0) ** 2))


def _dropwave(X):
    X = np.asarray(X, dtype=np.float64)
    r2 = (X ** 2).sum(axis=-1)
    return -(1.0 + np.cos(12.0 * np.sqrt(r2))) / (0.5 * r2 + 2.0)


def _easom(X):
    x1, x2 = np.moveaxis(np.asarray(X, dtype=np.float64), -1, 0)
    return -np.cos(x1) * np.cos(x2) * np.exp(-((x1 - np.pi) ** 2 + (x2 - np.pi) ** 2))


def _eggholder(X):
    x1, x2 = np.moveaxis(np.asarray(X, dtype=np.float64), -1, 0)
    raw = (-(x2 + 47.0) * np.sin(np.sqrt(np.abs(x2 + x1 / 2.0 + 47.0)))
           - x1 * np.sin(np.sqrt(np.abs(x1 - (x2 + 47.0)))))
    return raw * 0.1


def _griewank(X):
    X = np.asarray(X, dtype=np.float64)
    i = np.arange(1, X.shape[-1] + 1, dtype=np.float64)
    return ((X ** 2).sum(axis=-1) / 4000.0
            - np.prod(np.cos(X / np.sqrt(i)), axis=-1) + 1.0)


_HARTMANN_ALPHA = np.array([1.0, 1.2, 3.0, 3.2])
_H3_A = np.array([[3.0, 10.0, 30.0], [0.1, 10.0, 35.0],
                  [3.0, 10.0, 30.0], [0.1, 10.0, 35.0]])
_H3_P = np.array([[0.3689, 0.1170, 0.2673], [0.4699, 0.4387, 0.7470],
                  [0.1091, 0.8732, 0.5547], [0.0381, 0.5743, 0.8828]])
_H6_A = np.array([[10.0, 3.0, 17.0, 3.5, 1.7, 8.0],
                  [0.05, 10.0, 17.0, 0.1, 8.0, 14.0],
                  [3.0, 3.5, 1.7, 10.0, 17.0, 8.0],
                  [17.0, 8.0, 0.05, 10.0, 0.1, 14.0]])
_H6_P = 1e-4 * np.array([[1312, 1696, 5569, 124, 8283, 5886],
                         [2329, 4135, 8307, 3736, 1004, 9991],
                         [2348, 1451, 3522, 2883, 3047, 6650],
                         [4047, 8828, 8732, 5743, 1091, 381]], dtype=np.float64)


def _hartmann(A, P):
    def f(X):
        X = np.asarray(X, dtype=np.float64)
        inner = (A * (X[..., None, :] - P) ** 2).sum(axis=-1)
        return -(_HARTMANN_ALPHA * np.exp(-inner)).sum(axis=-1)
    return f


_hartmann3 = _hartmann(_H3_A, _H3_P)
_hartmann6 = _hartmann(_H6_A, _H6_P)


def _himmelblau(X):
    x1, x2 = np.moveaxis(np.asarray(X, dtype=np.float64), -1, 0)
    return (x1 ** 2 + x2 - 11.0) ** 2 + (x1 + x2 ** 2 - 7.0) ** 2


def _holder(X):
    x1, x2 = np.moveaxis(np.asarray(X, dtype=np.float64), -1, 0)
    return -np.abs(np.sin(x1) * np.cos(x2)
                   * np.exp(np.abs(1.0 - np.sqrt(x1 ** 2 + x2 ** 2) / np.pi)))


_LANG_A = np.array([[3.0, 5.0], [5.0, 2.0], [2.0, 1.0], [1.0, 4.0], [7.0, 9.0]])
_LANG_C = np.array([1.0, 2.0, 5.0, 2.0, 3.0])


def _langermann(X):
    X = np.asarray(X, dtype=np.float64)
    d2 = ((X[..., None, :] - _LANG_A) ** 2).sum(axis=-1)
    return -(_LANG_C * np.exp(-d2 / np.pi) * np.cos(np.pi * d2)).sum(axis=-1)


def _levy13(X):
    x1, x2 = np.moveaxis(np.asarray(X, dtype=np.float64), -1, 0)
    return (np.sin(3 * np.pi * x1) ** 2
            + (x1 - 1.0) ** 2 * (1.0 + np.sin(3 * np.pi * x2) ** 2)
            + (x2 - 1.0) ** 2 * (1.0 + np.sin(2 * np.pi * x2) ** 2))


def _michalewicz(X):
    X = np.asarray(X, dtype=np.float64)
    i = np.arange(1, X.shape[-1] + 1, dtype=np.float64)
    return -(np.sin(X) * np.sin(i * X ** 2 / np.pi) ** 20).sum(axis=-1)


def _perm(X):
    X = np.asarray(X, dtype=np.float64)
    d = X.shape[-1]
    j = np.arange(1, d + 1, dtype=np.float64)
    i = np.arange(1, d + 1, dtype=np.float64)[:, None]
    pows = X[..., None, :] ** i            # (..., i, j)
    ref = (1.0 / j) ** i
    inner = ((j + 0.5) * (pows - ref)).sum(axis=-1)
    return (inner ** 2).sum(axis=-1) * 1e-3


def _powell(X):
    X = np.asarray(X, dtype=np.float64)
    a = X[..., 0::4]
    b = X[..., 1::4]
    c = X[..., 2::4]
    e = X[..., 3::4]
    raw = ((a + 10.0 * b) ** 2 + 5.0 * (c - e) ** 2
           + (b - 2.0 * c) ** 4 + 10.0 * (a - e) ** 4).sum(axis=-1)
    return raw * 1e-4


def _rastrigin(X):
    X = np.asarray(X, dtype=np.float64)
    d = X.shape[-1]
    return 10.0 * d + (X ** 2 - 10.0 * np.cos(2 * np.pi * X)).sum(axis=-1)


def _rosenbrock(X):
    X = np.asarray(X, dtype=np.float64)
    a = X[..., :-1]
    b = X[..., 1:]
    raw = (100.0 * (b - a ** 2) ** 2 + (1.0 - a) ** 2).sum(axis=-1)
    return raw * 1e-2


def _schaffer(X):
    x1, x2 = np.moveaxis(np.asarray(X, dtype=np.float64), -1, 0)
    r2 = x1 ** 2 + x2 ** 2
    return 0.5 + (np.sin(x1 ** 2 - x2 ** 2) ** 2 - 0.5) / (1.0 + 0.001 * r2) ** 2


def _schubert(X):
    x1, x2 = np.moveaxis(np.asarray(X, dtype=np.float64), -1, 0)
    j = np.arange(1.0, 6.0)
    s1 = (j * np.cos((j + 1.0) * x1[..., None] + j)).sum(axis=-1)
    s2 = (j * np.cos((j + 1.0) * x2[..., None] + j)).sum(axis=-1)
    return s1 * s2 * 0.1


# ── registry ──────────────────────────────────────────────────────────

# crude analytic gradient-norm bounds over the default domains
_LIP_ACKLEY_2D = (4.0 + 2.0 * math.pi * math.e) / math.sqrt(2.0)   # 14.91
_LIP_CAMEL = 150.5      # sqrt(148.2^2 + 26^2), coordinatewise poly bounds
_LIP_GRIEWANK_2D = 1.46  # per-coord |x|/2000 + 1, x in [-50, 50]
_LIP_LEVY13 = 1946.0    # dominated by (x1-1)^2 * 3*pi*|sin(6 pi x2)| term
_LIP_RASTRIGIN_2D = 101.6  # per-coord 2|x| + 20*pi, x in [-4.5, 4.5]


@dataclass(frozen=True)
class _Entry:
    factory: Callable[[int], Objective]
    default_dim: int
    dims: str  # "2", "fixed", "any", "even4", ">=2"


def _fixed_dim_entry(name, fn, lo, hi, dim, known_max, lip=None):
    def factory(d: int) -> Objective:
        if d != dim:
            raise ValueError(f"{name} is only defined for dimension {dim}")
        dom = (BoxDomain.from_bounds(list(zip(lo, hi)))
               if isinstance(lo, (list, tuple)) else BoxDomain.cube(lo, hi, dim))
        return Objective(name=name, dim=dim, default_domain=dom,
                         batch=lambda X: -fn(X), known_max=known_max,
                         known_lipschitz=lip)
    return _Entry(factory, dim, "fixed")


def _any_dim_entry(name, fn, lo, hi, default_dim, known_max,
                   lip_by_dim=None, min_dim=1, step=1):
    def factory(d: int) -> Objective:
        if d < min_dim or (d - min_dim) % step != 0:
            raise ValueError(f"{name} does not support dimension {d}")
        dom = BoxDomain.cube(lo, hi, d)
        lip = lip_by_dim(d) if lip_by_dim is not None else None
        return Objective(name=name, dim=d, default_domain=dom,
                         batch=lambda X: -fn(X), known_max=known_max,
                         known_lipschitz=lip)
    return _Entry(factory, default_dim, "any")


_REGISTRY: dict[str, _Entry] = {
    "ackley": _any_dim_entry(
        "ackley", _ackley, -10.0, 10.0, 2, 0.0,
        lip_by_dim=lambda d: (4.0 + 2.0 * math.pi * math.e) / math.sqrt(d)),
    "bukin": _fixed_dim_entry(
        "bukin", _bukin, (-15.0, -3.0), (-5.0, 3.0), 2, 0.0),
    "camel": _fixed_dim_entry(
        "camel", _camel, (-2.0, -1.0), (2.0, 1.0), 2,
        1.0316284534898774, lip=_LIP_CAMEL),
    "colville": _fixed_dim_entry(
        "colville", _colville, -10.0, 10.0, 4, 0.0),
    "crossintray": _fixed_dim_entry(
        "crossintray", _crossintray, -10.0, 10.0, 2, 2.0626118708227397),
    "damavandi": _fixed_dim_entry(
        "damavandi", _damavandi, 0.0, 14.0, 2, 0.0),
    "dropwave": _fixed_dim_entry(
        "dropwave", _dropwave, -4.0, 4.0, 2, 1.0),
    "easom": _fixed_dim_entry(
        "easom", _easom, -20.0, 20.0, 2, 1.0),
    "eggholder": _fixed_dim_entry(
        "eggholder", _eggholder, -512.0, 512.0, 2, 95.9640662720851),
    "griewank": _any_dim_entry(
        "griewank", _griewank, -50.0, 50.0, 2, 0.0,
        lip_by_dim=lambda d: math.sqrt(d) * (50.0 / 2000.0 + 1.0) * 1.0001),
    "hartmann3": _fixed_dim_entry(
        "hartmann3", _hartmann3, 0.0, 1.0, 3, 3.862779787332663),
    "hartmann6": _fixed_dim_entry(
        "hartmann6", _hartmann6, 0.0, 1.0, 6, 3.322368011415515),
    "himmelblau": _fixed_dim_entry(
        "himmelblau", _himmelblau, -4.0, 4.0, 2, 0.0),
    "holder": _fixed_dim_entry(
        "holder", _holder, -10.0, 10.0, 2, 19.208502567886754),
    "langermann": _fixed_dim_entry(
        "langermann", _langermann, 0.0, 10.0, 2, 5.162126159963984),
    "levy": _fixed_dim_entry(
        "levy", _levy13, -10.0, 10.0, 2, 0.0, lip=_LIP_LEVY13),
    "michalewicz": _fixed_dim_entry(
        "michalewicz", _michalewicz, 0.0, math.pi, 2, 1.8013034100985534),
    "perm": _any_dim_entry(
        "perm", _perm, -1.0, 1.0, 10, 0.0),
    "powell": _any_dim_entry(
        "powell", _powell, -4.0, 5.0, 8, 0.0, min_dim=4, step=4),
    "rastrigin": _any_dim_entry(
        "rastrigin", _rastrigin, -4.5, 4.5, 2, 0.0,
        lip_by_dim=lambda d: math.sqrt(d) * (2.0 * 4.5 + 20.0 * math.pi)),
    "rosenbrock": _any_dim_entry(
        "rosenbrock", _rosenbrock, -3.0, 3.0, 3, 0.0, min_dim=2),
    "schaffer": _fixed_dim_entry(
        "schaffer", _schaffer, -6.0, 6.0, 2, 0.0),
    "schubert": _fixed_dim_entry(
        "schubert", _schubert, -10.0, 10.0, 2, 18.673090883102397),
}

_CUSTOM: dict[str, Objective] = {}


def builtin_names() -> list[str]:
    return sorted(set(_REGISTRY) | set(_CUSTOM))


def builtin(name: str, dim: int | None = None) -> Objective:
    """Look up a benchmark objective by name, optionally at a non-default dim."""
    key = name.lower()
    if key in _CUSTOM:
        obj = _CUSTOM[key]
        if dim is not None and dim != obj.dim:
            raise ValueError(f"{name} is registered at dimension {obj.dim}")
        return obj
    if key not in _REGISTRY:
        raise KeyError(f"unknown objective {name!r}; known: {', '.join(builtin_names())}")
    entry = _REGISTRY[key]
    return entry.factory(entry.default_dim if dim is None else int(dim))


def register(objective: Objective) -> None:
    """Add a user objective to the lookup table (overrides builtins by name)."""
    _CUSTOM[objective.name.lower()] = objective
