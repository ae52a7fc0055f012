"""Exact distribution theory for uniform points on the probability simplex.

Covers the joint CDF, the hazard rate / usual stochastic / likelihood ratio
orders and their restrictiveness, Whitworth's formula for the largest
coordinate and its moments, and a randomness test built on top of them.
"""

from .errors import CapacityError, DataError, SimplexError, TruncationError
from .identities import F_xynr, beta_diff, f_nt, harmonic, let_identity
from .max_coordinate import MaxDistParams, moment, variance, whitworth_cdf
from .simplex_core import (
    SimplexVector,
    joint_cdf,
    sample_exponential,
    sample_spacings,
    simplex_volume,
    spacings,
    tail_prob,
)
from .stochastic_orders import (
    OrderKind,
    hr_reduce,
    hr_upper_prob,
    leq_hr,
    leq_lr,
    leq_st,
    restrictiveness_constant,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "DataError",
    "F_xynr",
    "MaxDistParams",
    "OrderKind",
    "SimplexError",
    "SimplexVector",
    "TruncationError",
    "beta_diff",
    "f_nt",
    "harmonic",
    "hr_reduce",
    "hr_upper_prob",
    "joint_cdf",
    "leq_hr",
    "leq_lr",
    "leq_st",
    "let_identity",
    "moment",
    "restrictiveness_constant",
    "sample_exponential",
    "sample_spacings",
    "simplex_volume",
    "spacings",
    "tail_prob",
    "variance",
    "whitworth_cdf",
]
