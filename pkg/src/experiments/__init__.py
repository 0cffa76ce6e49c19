# Experiment harness
from .convergence import convergence_study, random_trust_matrix
from .metrics import authentic_percent, load_stddev
from .sweep import DEFAULT_VALUES, SCENARIOS, scenario_config, simulate, sweep

__all__ = [
    'authentic_percent',
    'convergence_study',
    'DEFAULT_VALUES',
    'load_stddev',
    'random_trust_matrix',
    'scenario_config',
    'SCENARIOS',
    'simulate',
    'sweep',
]
