"""Global optimization of expensive black-box Lipschitz functions.

The centerpiece is a rejection-sampling optimizer (ECP) that spends its
evaluation budget only on points that could still be the maximizer given
everything observed so far, growing its acceptance region adaptively so no
knowledge of the Lipschitz constant is needed. Ships with a pure-random-search
baseline, a known-constant (LIPO) mode, a synthetic objective suite, theory
diagnostics and a benchmark CLI.
"""

from .acceptance import History, accepts, min_upper_envelope, region_fraction_oracle
from .analysis import (
    BoundInputs,
    empirical_hitting_time,
    growth_cap,
    hitting_time_bound,
    regret_upper_bound,
    rejection_prob_bound,
)
from .core import (
    AttemptGuardExceeded,
    BoxDomain,
    EcpConfig,
    EvalRecord,
    RngStream,
    Trace,
    derive_seed,
    regret,
    uniform_sample,
)
from .external import ExternalTimeout, ProcessExited, ProtocolError, external
from .objectives import Objective, builtin, builtin_names, register
from .optimizers import ecp_optimize, lipo_config, prs_optimize

__version__ = "0.1.0"

__all__ = [
    "AttemptGuardExceeded",
    "BoundInputs",
    "BoxDomain",
    "EcpConfig",
    "EvalRecord",
    "ExternalTimeout",
    "History",
    "Objective",
    "ProcessExited",
    "ProtocolError",
    "RngStream",
    "Trace",
    "accepts",
    "builtin",
    "builtin_names",
    "derive_seed",
    "ecp_optimize",
    "empirical_hitting_time",
    "external",
    "growth_cap",
    "hitting_time_bound",
    "lipo_config",
    "min_upper_envelope",
    "prs_optimize",
    "regret",
    "regret_upper_bound",
    "region_fraction_oracle",
    "rejection_prob_bound",
    "uniform_sample",
]
