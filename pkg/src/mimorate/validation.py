"""Self-checks of the simulator against exact identities, and the thresholds report."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import selection
from .beamforming import normalize, zf_precoder
from .channel import draw_channels, estimate_moments
from .core import ConfigError, LinkDirection, Normalization, Scheme, SystemConfig, linear_to_db, validate_config
from .linalg import column_norm_sq, frobenius_norm_sq
from .rates import Link, trial_rates

Z_LIMIT = 4.5
VAR_RTOL = 0.10
ORTHO_TOL = 1e-8
POWER_TOL = 1e-10
AMGM_TOL = 1e-10


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def text(self) -> str:
        lines = [c.line() for c in self.checks]
        lines.append(f"{sum(c.passed for c in self.checks)}/{len(self.checks)} checks passed")
        return "\n".join(lines) + "\n"


def moment_checks(m, samples, seed):
    report = estimate_moments(m, samples, seed)
    out = []
    for s in report.stats:
        ok = s.z <= Z_LIMIT and s.var_rel_error <= VAR_RTOL
        out.append(Check(f"moments M={m} {s.name}", ok,
                         f"z={s.z:.2f} var={s.empirical_var:.4g} (exact {s.analytic_var:.4g})"))
    return out


def beamforming_checks(m, k, trials, seed):
    """ZF interference nulling and unit total power for both normalizations."""
    cfg = SystemConfig(m=m, k=k, trials=trials, seed=seed)
    try:
        validate_config(cfg, Scheme.ZF)
    except ConfigError as exc:
        return [Check(f"ZF config M={m} K={k}", False, f"configuration error: {exc}")]
    h = draw_channels(cfg)
    f = zf_precoder(h)
    out = []
    for mode in (Normalization.VECTOR, Normalization.MATRIX):
        g = normalize(f, mode)
        cross = np.abs(h @ g)
        off = cross * (1 - np.eye(k))
        ortho = float(np.max(off / np.sqrt(column_norm_sq(g))[..., None, :]))
        power = float(np.max(np.abs(frobenius_norm_sq(g) - 1.0)))
        out.append(Check(f"ZF orthogonality {mode.value} M={m} K={k}", ortho <= ORTHO_TOL,
                         f"max |h_i^T g_j|/|g_j| = {ortho:.2e}"))
        out.append(Check(f"unit power {mode.value} M={m} K={k}", power <= POWER_TOL,
                         f"max |sum |g_k|^2 - 1| = {power:.2e}"))
    return out


def amgm_checks(m, ks, pts, trials, seed):
    """Per-realization ZF vector >= ZF matrix ordering."""
    out = []
    for k in ks:
        cfg = SystemConfig(m=m, k=k, trials=trials, seed=seed)
        vec = trial_rates(cfg, Link(LinkDirection.DOWNLINK, Scheme.ZF, Normalization.VECTOR), pts)
        mat = trial_rates(cfg, Link(LinkDirection.DOWNLINK, Scheme.ZF, Normalization.MATRIX), pts)
        for p, v, w in zip(pts, vec, mat):
            worst = float(np.min(v - w))
            out.append(Check(f"AM-GM ordering M={m} K={k} pt={p:g}", worst >= -AMGM_TOL,
                             f"min(vec - mat) = {worst:.3g} over {trials} draws"))
    return out


def run_validation(ms=(4, 8, 24), k=None, seed=0, samples=100_000, trials=2000) -> ValidationReport:
    """Moment identities, ZF nulling, normalization power and the AM-GM ordering.

    With ``k`` given, the beamforming checks run at that user count for
    every M (a ``k > m`` pair is reported as a configuration failure).
    """
    checks = []
    for m in ms:
        checks += moment_checks(m, samples, seed)
    for m in ms:
        ks = [k] if k is not None else sorted({1, max(1, m // 2), max(1, m - 1)})
        for kk in ks:
            checks += beamforming_checks(m, kk, min(trials, 1000), seed)
    m_top = max(ms)
    ks = [k] if k is not None and k <= m_top else [kk for kk in (2, 8, 20) if kk < m_top]
    checks += amgm_checks(m_top, ks, (0.1, 1.0, 10.0), trials, seed)
    return ValidationReport(tuple(checks))


def _db(x):
    return f"{linear_to_db(x):.2f} dB ({x:.6g})"


def thresholds_report(m, k=None, pt=None, pu=None) -> str:
    """Switching points for (m, k) and, where powers are given, the resulting mode."""
    lines = [f"M = {m}" + (f", K = {k}" if k is not None else "")]
    if k is not None:
        if k >= 2:
            lines.append(f"P_th,DL    = {_db(selection.p_th_dl(m, k))}")
        lines.append(f"P_th,UL    = {_db(selection.p_th_ul(m, k))}")
    lines.append(f"P_cross,DL = {_db(selection.p_cross(LinkDirection.DOWNLINK, m))}")
    lines.append(f"P_cross,UL = {_db(selection.p_cross(LinkDirection.UPLINK, m))}")
    if pt is not None:
        lines.append(f"K_cross,DL = {selection.k_cross_dl(pt, m):.6g} at pt = {_db(pt)}")
    if pu is not None:
        lines.append(f"K_cross,UL = {selection.k_cross_ul(pu, m):.6g} at pu = {_db(pu)}")
    if k is not None:
        for direction, power in ((LinkDirection.DOWNLINK, pt), (LinkDirection.UPLINK, pu)):
            if power is None or (direction is LinkDirection.DOWNLINK and k < 2):
                continue
            d = selection.select_mode(direction, power, m, k)
            lines.append(f"mode {direction.value.upper()}: {d.chosen.name} "
                         f"(power {_db(power)} vs threshold {_db(d.threshold_value)})")
    return "\n".join(lines) + "\n"
