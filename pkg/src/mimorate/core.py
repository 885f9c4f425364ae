"""Shared configuration, enumerations and validation."""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, replace

__all__ = [
    "ConfigError",
    "IllConditionedWarning",
    "LinkDirection",
    "Normalization",
    "Scheme",
    "SystemConfig",
    "db_to_linear",
    "linear_to_db",
    "validate_config",
]

UINT64_MAX = 2**64 - 1


class ConfigError(ValueError):
    """Raised when a configuration violates an invariant."""


class IllConditionedWarning(UserWarning):
    """Emitted for ZF with K == M, where the Gram matrix is near singular."""


class Scheme(enum.Enum):
    ZF = "zf"
    MRT = "mrt"
    MRC = "mrc"


class Normalization(enum.Enum):
    VECTOR = "vec"
    MATRIX = "mat"
    NONE = "none"


class LinkDirection(enum.Enum):
    DOWNLINK = "dl"
    UPLINK = "ul"


DOWNLINK_SCHEMES = frozenset({Scheme.ZF, Scheme.MRT})
UPLINK_SCHEMES = frozenset({Scheme.ZF, Scheme.MRC})


@dataclass(frozen=True)
class SystemConfig:
    """Antenna/user dimensions, powers (linear units) and Monte-Carlo setup.

    Parameters
    ----------
    m : int
        Number of base-station antennas.
    k : int
        Number of single-antenna users.
    pt : float
        Total downlink transmit power (noise variance is 1).
    pu : float
        Uplink transmit power per user.
    trials : int
        Number of channel realizations.
    seed : int
        Unsigned 64-bit master seed.
    """

    m: int
    k: int
    pt: float = 1.0
    pu: float = 1.0
    trials: int = 10_000
    seed: int = 0

    def replace(self, **changes) -> SystemConfig:
        return replace(self, **changes)


def _check_positive_int(name, value):
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ConfigError(f"{name} must be a positive integer, got {value!r}")


def _check_positive_real(name, value):
    if not isinstance(value, (int, float)) or not math.isfinite(value) or value <= 0:
        raise ConfigError(f"{name} must be a positive finite number, got {value!r}")


def validate_config(cfg: SystemConfig, scheme: Scheme | None = None) -> SystemConfig:
    """Check `cfg` against the invariants for `scheme` and return it unchanged.

    ZF additionally needs ``k <= m`` so that the K x K Gram matrix is
    invertible. ``k == m`` is accepted with an :class:`IllConditionedWarning`.
    """
    _check_positive_int("m", cfg.m)
    _check_positive_int("k", cfg.k)
    _check_positive_real("pt", cfg.pt)
    _check_positive_real("pu", cfg.pu)
    _check_positive_int("trials", cfg.trials)
    if isinstance(cfg.seed, bool) or not isinstance(cfg.seed, int) or not 0 <= cfg.seed <= UINT64_MAX:
        raise ConfigError(f"seed must be an unsigned 64-bit integer, got {cfg.seed!r}")
    if scheme is Scheme.ZF:
        if cfg.k > cfg.m:
            raise ConfigError(
                f"k exceeds m (k={cfg.k}, m={cfg.m}): Gram matrix singular by construction"
            )
        if cfg.k == cfg.m:
            warnings.warn(
                f"k == m == {cfg.m}: ZF Gram matrix is ill-conditioned",
                IllConditionedWarning,
                stacklevel=2,
            )
    return cfg


def db_to_linear(db):
    return 10.0 ** (db / 10.0)


def linear_to_db(value):
    return 10.0 * math.log10(value)
