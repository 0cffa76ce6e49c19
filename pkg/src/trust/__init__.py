# Trust aggregation core
from .baselines import eigentrust, elect_power_nodes, powertrust
from .errors import (
    ConvergenceError,
    DimensionMismatchError,
    InvalidTrustInputError,
    NoInteractionError,
    NonFiniteTrustError,
    TrustError,
)
from .matrix import NormalizedTrustMatrix, TrustMatrix
from .metrics import bias_evaluation, combined_score, local_trust, residual, set_trust
from .solver import absolute_trust_step, solve_absolute_trust

__all__ = [
    'absolute_trust_step',
    'bias_evaluation',
    'combined_score',
    'ConvergenceError',
    'DimensionMismatchError',
    'eigentrust',
    'elect_power_nodes',
    'InvalidTrustInputError',
    'local_trust',
    'NoInteractionError',
    'NonFiniteTrustError',
    'NormalizedTrustMatrix',
    'powertrust',
    'residual',
    'set_trust',
    'solve_absolute_trust',
    'TrustError',
    'TrustMatrix',
]
