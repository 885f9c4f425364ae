"""Power and user-count thresholds for choosing ZF versus MRT/MRC."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .core import LinkDirection, Scheme


class ThresholdKind(enum.Enum):
    POWER_THRESHOLD = "power-threshold"
    POWER_CROSS = "power-cross"
    USER_CROSS = "user-cross"


@dataclass(frozen=True)
class ModeDecision:
    direction: LinkDirection
    chosen: Scheme
    threshold_kind: ThresholdKind
    threshold_value: float
    m: int
    k: int
    power: float


def p_th_dl(m, k):
    """Downlink power above which ZF-vector beats MRT-matrix: ``K^2 / ((K-1)(M-K+1))``."""
    if k < 2:
        raise ValueError(f"downlink power threshold needs k >= 2, got k={k}")
    if k > m:
        raise ValueError(f"k exceeds m (k={k}, m={m})")
    return k * k / ((k - 1) * (m - k + 1))


def p_th_ul(m, k):
    """Uplink per-user power above which ZF beats MRC: ``1 / (M-K+1)``."""
    if k < 1 or k > m:
        raise ValueError(f"need 1 <= k <= m, got k={k}, m={m}")
    return 1.0 / (m - k + 1)


def p_cross(direction: LinkDirection, m):
    """Smallest power threshold over K (reached at K = 2); below it MRT/MRC always wins."""
    if m < 2:
        raise ValueError(f"power cross point needs m >= 2, got m={m}")
    if direction is LinkDirection.DOWNLINK:
        return 4.0 / (m - 1)
    return 1.0 / (m - 1)


def k_cross_dl(pt, m):
    """User count above which MRT beats ZF on the downlink: ``pt (M+1) / (1+pt)``."""
    if pt <= 0:
        raise ValueError(f"pt must be positive, got {pt}")
    return pt * (m + 1) / (1.0 + pt)


def k_cross_ul(pu, m):
    """User count above which MRC beats ZF on the uplink: ``M + 1 - 1/pu``."""
    if pu <= 0:
        raise ValueError(f"pu must be positive, got {pu}")
    return m + 1 - 1.0 / pu


def select_mode(direction: LinkDirection, power, m, k) -> ModeDecision:
    """Pick ZF when `power` reaches the power threshold, MRT/MRC otherwise; ties go to ZF."""
    if direction is LinkDirection.DOWNLINK:
        threshold, fallback = p_th_dl(m, k), Scheme.MRT
    else:
        threshold, fallback = p_th_ul(m, k), Scheme.MRC
    chosen = Scheme.ZF if power >= threshold else fallback
    return ModeDecision(direction, chosen, ThresholdKind.POWER_THRESHOLD, threshold, m, k, power)
