"""Acceptance predicate over evaluation history, plus a grid oracle for tests.

A candidate x is accepted against a history of evaluated points iff the
minimum over evaluated points i of  f(x_i) + eps * ||x - x_i||_2  is at least
the best observed value. The inequality is evaluated with plain ``>=``; ties
are accepted and no tolerance slack is applied. Values are never rescaled
(the inequality is not scale-invariant in eps).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import BoxDomain

__all__ = ["History", "accepts", "min_upper_envelope", "region_fraction_oracle"]


@dataclass(frozen=True)
class History:
    """Evaluated points and their values; best value cached at construction."""

    points: np.ndarray
    values: np.ndarray
    best_value: float

    @classmethod
    def of(cls, points, values) -> "History":
        pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
        vals = np.atleast_1d(np.asarray(values, dtype=np.float64))
        if len(pts) != len(vals) or len(vals) < 1:
            raise ValueError("points and values must have equal length >= 1")
        pts.flags.writeable = False
        vals.flags.writeable = False
        return cls(points=pts, values=vals, best_value=float(vals.max()))

    @property
    def dim(self) -> int:
        return int(self.points.shape[1])

    def __len__(self) -> int:
        return len(self.values)

    def extended(self, point, value) -> "History":
        return History.of(np.vstack([self.points, np.atleast_2d(point)]),
                          np.append(self.values, value))


def envelope_batch(X: np.ndarray, points: np.ndarray, values: np.ndarray,
                   eps: float) -> np.ndarray:
    """min_i (values[i] + eps * ||X - points[i]||) for a batch of candidates.

    Shared by the public scalar operations, the optimizer's inner loop and the
    grid oracle, so all of them agree bit-for-bit.
    """
    diff = X[:, None, :] - points[None, :, :]
    dists = np.sqrt(np.einsum("mtd,mtd->mt", diff, diff))
    return (values[None, :] + eps * dists).min(axis=1)


def _check_candidate(x, history: History) -> np.ndarray:
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if x.ndim != 1 or x.size != history.dim:
        raise ValueError(f"candidate has dimension {x.size}, history has {history.dim}")
    return x


def min_upper_envelope(x, history: History, eps: float) -> float:
    """Optimistic value bound at x implied by the history and slope eps."""
    if not eps > 0:
        raise ValueError("eps must be > 0")
    x = _check_candidate(x, history)
    return float(envelope_batch(x[None, :], history.points, history.values, eps)[0])


def accepts(x, history: History, eps: float) -> bool:
    """Membership test for the acceptance region: envelope >= best value."""
    return min_upper_envelope(x, history, eps) >= history.best_value


def region_fraction_oracle(history: History, eps: float, domain: BoxDomain,
                           grid_points_per_dim: int) -> float:
    """Fraction of a regular grid accepted; brute-force test oracle, d <= 3."""
    if grid_points_per_dim < 2:
        raise ValueError("need at least 2 grid points per dimension")
    d = domain.dim
    if d > 3:
        raise ValueError("grid oracle is exponential in dimension; d <= 3 only")
    if d != history.dim:
        raise ValueError("domain and history dimensions differ")
    axes = [np.linspace(domain.lower[i], domain.upper[i], grid_points_per_dim)
            for i in range(d)]
    mesh = np.meshgrid(*axes, indexing="ij")
    X = np.stack([m.ravel() for m in mesh], axis=1)
    env = envelope_batch(X, history.points, history.values, eps)
    return float(np.mean(env >= history.best_value))
