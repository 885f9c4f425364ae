"""Sweep definitions for the published figures, at their caption parameters."""

from __future__ import annotations

from .core import SystemConfig, db_to_linear
from .sweep import Axis, Curve, SweepSpec

DEFAULT_M = 24
DEFAULT_TRIALS = 10_000
USERS = tuple(range(1, DEFAULT_M + 1))

# (axis, axis values, m, k, pt_db, pu_db, curves, title)
_FIGURES = {
    "3a": (Axis.USERS, USERS, 24, 1, -13.8, -13.8,
           ("zf-vec", "zf-mat", "zf-mat-u1", "zf_dl_vec", "zf_dl_lower"),
           "ZF downlink, total SNR -13.8 dB"),
    "3b": (Axis.USERS, USERS, 24, 1, -13.8, -13.8,
           ("mrt-vec", "mrt-mat", "mrt_dl_vec_low", "mrt_dl_mat"),
           "MRT downlink, total SNR -13.8 dB"),
    "4a": (Axis.USERS, USERS, 24, 1, 13.8, 13.8,
           ("mrc-ul", "mrc_ul_high"),
           "MRC uplink, SNR 13.8 dB"),
    "4b": (Axis.USERS, USERS, 24, 1, -13.8, -13.8,
           ("mrc-ul", "mrc_ul_low"),
           "MRC uplink, SNR -13.8 dB"),
    "6a": (Axis.POWER_DB, tuple(float(x) for x in range(-20, 21)), 24, 20, 0.0, 0.0,
           ("zf-vec", "mrt-mat"),
           "Downlink, M=24, K=20"),
    "6b": (Axis.POWER_DB, tuple(float(x) for x in range(-20, 21)), 24, 20, 0.0, 0.0,
           ("zf-ul", "mrc-ul"),
           "Uplink, M=24, K=20"),
    "7a": (Axis.USERS, USERS, 24, 1, -7.6, -13.6,
           ("zf-vec", "mrt-mat"),
           "Downlink at the power cross point, -7.6 dB"),
    "7b": (Axis.USERS, USERS, 24, 1, -7.6, -13.6,
           ("zf-ul", "mrc-ul"),
           "Uplink at the power cross point, -13.6 dB"),
    "8a": (Axis.USERS, USERS, 24, 1, 0.0, 0.0,
           ("zf-vec", "mrt-mat", "zf_dl_vec", "mrt_dl_mat"),
           "Downlink, total SNR 0 dB"),
    "8b": (Axis.USERS, USERS, 24, 1, 5.0, 5.0,
           ("zf-vec", "mrt-mat", "zf_dl_vec", "mrt_dl_mat"),
           "Downlink, total SNR 5 dB"),
    "9a": (Axis.ANTENNAS, tuple(range(10, 101, 10)), 10, 10, -20.0, -20.0,
           ("mrt-mat", "mrt_dl_mat"),
           "MRT downlink vs M, K=10, -20 dB"),
    "9b": (Axis.ANTENNAS, tuple(range(10, 101, 10)), 10, 10, -20.0, -20.0,
           ("mrc-ul", "mrc_ul_low"),
           "MRC uplink vs M, K=10, -20 dB"),
}

FIGURE_IDS = tuple(_FIGURES)


def figure_defaults(fig_id: str) -> dict:
    try:
        axis, values, m, k, pt_db, pu_db, curves, title = _FIGURES[fig_id]
    except KeyError:
        raise ValueError(f"unknown figure {fig_id!r}; choose from {', '.join(FIGURE_IDS)}") from None
    return dict(axis=axis, values=values, m=m, k=k, pt_db=pt_db, pu_db=pu_db,
                curves=curves, title=title)


def figure_spec(fig_id: str, trials: int = DEFAULT_TRIALS, seed: int = 0, **overrides) -> SweepSpec:
    """Build the sweep for `fig_id`; keyword overrides replace caption defaults."""
    d = figure_defaults(fig_id)
    d.update({key: v for key, v in overrides.items() if v is not None})
    cfg = SystemConfig(m=d["m"], k=d["k"], pt=db_to_linear(d["pt_db"]), pu=db_to_linear(d["pu_db"]),
                       trials=trials, seed=seed)
    curves = tuple(c if isinstance(c, Curve) else Curve.parse(c) for c in d["curves"])
    return SweepSpec(d["axis"], tuple(d["values"]), cfg, curves, title=d["title"])
