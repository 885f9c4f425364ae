"""Massive-MIMO ZF / MRT / MRC sum-rate simulation, closed forms and mode selection."""

from .core import (ConfigError, LinkDirection, Normalization, Scheme, SystemConfig,
                   db_to_linear, linear_to_db, validate_config)
from .rates import Link, RateEstimate, ergodic_sum_rate, ergodic_zf_mat_u1

__version__ = "0.1.0"

__all__ = [
    "ConfigError", "Link", "LinkDirection", "Normalization", "RateEstimate", "Scheme",
    "SystemConfig", "db_to_linear", "ergodic_sum_rate", "ergodic_zf_mat_u1",
    "linear_to_db", "validate_config",
]
