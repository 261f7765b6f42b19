"""Closed-form theory diagnostics: rejection/growth/hitting/regret bounds.

All formulas are evaluated in log space with a log-gamma routine so they stay
accurate (1e-12 relative) up to dimension 1000. Probability bounds are
returned raw by default (they may exceed 1); pass ``clamped=True`` for the
interpretation as a probability.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.special import gammaln

from .core import Trace

__all__ = [
    "BoundInputs",
    "empirical_hitting_time",
    "growth_cap",
    "hitting_time_bound",
    "regret_upper_bound",
    "rejection_prob_bound",
]


@dataclass(frozen=True)
class BoundInputs:
    """Problem/config constants the bounds depend on.

    ``delta_range`` is the objective's value range max f - min f over the
    domain; ``volume`` the domain's Lebesgue volume.
    """

    d: int
    delta_range: float
    volume: float
    eps1: float
    tau: float
    n: int
    k: float | None = None
    confidence_delta: float | None = None

    def __post_init__(self) -> None:
        if self.d < 1 or self.n < 1:
            raise ValueError("d and n must be >= 1")
        if self.delta_range < 0:
            raise ValueError("delta_range must be >= 0")
        if not (self.volume > 0 and self.eps1 > 0):
            raise ValueError("volume and eps1 must be > 0")
        if not self.tau > 1:
            raise ValueError("tau must be > 1")
        if self.k is not None and not self.k > 0:
            raise ValueError("k must be > 0 when given")
        if self.confidence_delta is not None and not 0 < self.confidence_delta < 1:
            raise ValueError("confidence_delta must be in (0, 1)")


def rejection_prob_bound(inputs: BoundInputs, t: int, v_t: int,
                         clamped: bool = False) -> float:
    """Upper bound on the probability of rejecting a candidate at step t+1
    after v_t growth firings within the round."""
    if t < 1 or v_t < 0:
        raise ValueError("t must be >= 1 and v_t >= 0")
    if inputs.delta_range == 0.0:
        return 0.0
    d = inputs.d
    log_raw = (
        math.log(t)
        + d * math.log(math.sqrt(math.pi) * inputs.delta_range)
        - d * math.log(inputs.eps1)
        - (t - 1) * d * math.log(inputs.tau)
        - v_t * d * math.log(inputs.tau)
        - float(gammaln(d / 2.0 + 1.0))
        - math.log(inputs.volume)
    )
    raw = math.exp(log_raw) if log_raw < 700 else math.inf
    return min(1.0, raw) if clamped else raw


def growth_cap(inputs: BoundInputs) -> int:
    """Number of growth firings after which acceptance probability is >= 1/2,
    uniformly over rounds t <= n."""
    if inputs.delta_range == 0.0:
        # bound is identically 0 for a constant objective; no growth needed
        return 0
    d = inputs.d
    log_arg = (
        math.log(2.0 * inputs.n)
        + d * math.log(math.sqrt(math.pi) * inputs.delta_range)
        - d * math.log(inputs.eps1)
        - float(gammaln(d / 2.0 + 1.0))
        - math.log(inputs.volume)
    )
    v = math.ceil(log_arg / (d * math.log(inputs.tau)))
    return max(0, int(v))


def hitting_time_bound(k: float, eps1: float, tau: float) -> int:
    """Round index by which the acceptance radius coefficient reaches k."""
    if not (k > 0 and eps1 > 0):
        raise ValueError("k and eps1 must be > 0")
    if not tau > 1:
        raise ValueError("tau must be > 1")
    return max(math.ceil(math.log(k / eps1) / math.log(tau)), 1)


def empirical_hitting_time(trace: Trace, k: float) -> int | None:
    """First recorded round whose eps_at_eval >= k; None if never reached."""
    if not k > 0:
        raise ValueError("k must be > 0")
    for record in trace.records:
        if record.eps_at_eval >= k:
            return record.round
    return None


def regret_upper_bound(k: float, diam: float, i_star: int, n: int,
                       confidence_delta: float, d: int) -> float:
    """High-probability regret bound: diam * i_star^(1/d) * k * (ln(1/delta)/n)^(1/d)."""
    if not (k > 0 and diam > 0):
        raise ValueError("k and diam must be > 0")
    if i_star < 1 or n < 1 or d < 1:
        raise ValueError("i_star, n and d must be >= 1")
    if not 0 < confidence_delta < 1:
        raise ValueError("confidence_delta must be in (0, 1)")
    return (diam * i_star ** (1.0 / d) * k
            * (math.log(1.0 / confidence_delta) / n) ** (1.0 / d))
