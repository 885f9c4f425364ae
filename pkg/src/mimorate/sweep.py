"""Parameter sweeps that emit the CSV contract ``axis,curve,rate,stderr,trials``."""

from __future__ import annotations

import csv
import enum
import io
import warnings
from dataclasses import dataclass, field

import numpy as np

from .analytic import CATALOG
from .core import (ConfigError, IllConditionedWarning, LinkDirection, Scheme, SystemConfig,
                   db_to_linear, validate_config)
from .rates import (Link, RateEstimate, inverse_frobenius_evaluator, rate_evaluator, trial_samples,
                    zf_mat_u1_from_samples)

CSV_HEADER = ("axis", "curve", "rate", "stderr", "trials")
ZF_MAT_U1 = "zf-mat-u1"


class Axis(enum.Enum):
    USERS = "users"
    POWER_DB = "power-db"
    ANTENNAS = "antennas"


@dataclass(frozen=True)
class Curve:
    """One output series: a Monte-Carlo link, the ZF first matrix bound, or a closed form."""

    name: str
    link: Link | None = None
    closed_form: str | None = None

    @classmethod
    def parse(cls, name: str) -> Curve:
        name = name.strip()
        if name in CATALOG:
            return cls(name, closed_form=name)
        if name == ZF_MAT_U1:
            return cls(name)
        return cls(name, link=Link.parse(name))

    @property
    def direction(self) -> LinkDirection:
        if self.closed_form is not None:
            return CATALOG[self.closed_form].direction
        if self.link is not None:
            return self.link.direction
        return LinkDirection.DOWNLINK

    @property
    def is_monte_carlo(self) -> bool:
        return self.closed_form is None


@dataclass(frozen=True)
class SweepSpec:
    axis: Axis
    values: tuple
    fixed: SystemConfig
    curves: tuple[Curve, ...]
    title: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.values:
            raise ValueError("axis values must be nonempty")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ValueError("axis values must be strictly increasing")
        if not self.curves:
            raise ValueError("at least one curve is required")
        if self.axis is not Axis.POWER_DB and any(v != int(v) or v < 1 for v in self.values):
            raise ValueError(f"{self.axis.value} axis values must be positive integers")


@dataclass(frozen=True)
class Row:
    axis: float
    curve: str
    rate: float
    stderr: float | None = None
    trials: int | None = None


def parse_range(text: str, integer: bool = False) -> tuple:
    """``start:stop:step`` with `stop` included; ``start:stop`` uses step 1."""
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise ValueError(f"axis range must be start:stop[:step], got {text!r}")
    start, stop = float(parts[0]), float(parts[1])
    step = float(parts[2]) if len(parts) == 3 else 1.0
    if step <= 0 or stop < start:
        raise ValueError(f"empty axis range {text!r}")
    n = int(np.floor((stop - start) / step + 1e-9)) + 1
    values = [start + i * step for i in range(n)]
    if integer:
        return tuple(int(round(v)) for v in values)
    # Round away float accumulation so 0.5 dB grids print cleanly.
    return tuple(float(round(v, 10)) for v in values)


def _point_config(spec, value):
    cfg = spec.fixed
    if spec.axis is Axis.USERS:
        return cfg.replace(k=int(value))
    if spec.axis is Axis.ANTENNAS:
        return cfg.replace(m=int(value))
    return cfg


def _power(cfg, direction):
    return cfg.pt if direction is LinkDirection.DOWNLINK else cfg.pu


def _closed_form_row(curve, cfg, value, power):
    cf = CATALOG[curve.closed_form]
    try:
        rate = cf(power, cfg.m, cfg.k)
    except (ValueError, ZeroDivisionError):
        rate = float("nan")
    return Row(value, curve.name, rate)


def _evaluator(curve, powers):
    if curve.link is None:
        return inverse_frobenius_evaluator
    return rate_evaluator(curve.link, powers)


def _estimates(curve, samples, cfg, powers):
    if curve.link is None:
        return [zf_mat_u1_from_samples(samples[0], cfg.k, p) for p in powers]
    return [RateEstimate.from_samples(s) for s in samples]


def _mc_rows(spec, cfg, values, powers_of, workers):
    """Rows of every Monte-Carlo curve at one configuration, on shared channel draws.

    ``powers_of(curve)`` gives the power (or powers, one per entry of `values`).
    Curves whose scheme cannot run at `cfg` yield NaN rows.
    """
    rows = {}
    active = []
    for j, curve in enumerate(spec.curves):
        if not curve.is_monte_carlo:
            continue
        try:
            validate_config(cfg, Scheme.ZF if curve.link is None else curve.link.scheme)
        except ConfigError:
            for i, v in enumerate(values):
                rows[i, j] = Row(v, curve.name, float("nan"))
            continue
        active.append((j, curve))
    samples = trial_samples(cfg, [_evaluator(c, powers_of(c)) for _, c in active], workers)
    for (j, curve), s in zip(active, samples):
        for i, est in enumerate(_estimates(curve, s, cfg, powers_of(curve))):
            rows[i, j] = Row(values[i], curve.name, est.mean_rate, est.std_error, est.trials)
    return rows


def sweep_rows(spec: SweepSpec, workers: int = 1) -> list[Row]:
    """Evaluate every (axis value, curve) pair, ordered axis-major then curve-minor."""
    table = {}
    with warnings.catch_warnings():
        # K == M points are expected on user sweeps.
        warnings.simplefilter("ignore", IllConditionedWarning)
        if spec.axis is Axis.POWER_DB:
            powers = db_to_linear(np.asarray(spec.values, dtype=float))
            table.update(_mc_rows(spec, spec.fixed, spec.values, lambda c: powers, workers))
            for j, curve in enumerate(spec.curves):
                if not curve.is_monte_carlo:
                    for i, v in enumerate(spec.values):
                        table[i, j] = _closed_form_row(curve, spec.fixed, v, powers[i])
        else:
            for i, v in enumerate(spec.values):
                cfg = _point_config(spec, v)
                point = _mc_rows(spec, cfg, (v,), lambda c: [_power(cfg, c.direction)], workers)
                table.update({(i, j): row for (_, j), row in point.items()})
                for j, curve in enumerate(spec.curves):
                    if not curve.is_monte_carlo:
                        table[i, j] = _closed_form_row(curve, cfg, v, _power(cfg, curve.direction))
    return [table[i, j] for i in range(len(spec.values)) for j in range(len(spec.curves))]


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if float(x).is_integer() and abs(x) < 1e15:
        return str(int(x))
    return f"{x:.9g}"


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in rows:
        writer.writerow([_fmt(r.axis), r.curve, _fmt(r.rate), _fmt(r.stderr), _fmt(r.trials)])
    return buf.getvalue()


def read_csv(text: str) -> list[Row]:
    reader = csv.reader(io.StringIO(text))
    header = tuple(next(reader))
    if header != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {header}")
    rows = []
    for axis, curve, rate, stderr, trials in reader:
        rows.append(Row(float(axis), curve, float(rate),
                        float(stderr) if stderr else None,
                        int(trials) if trials else None))
    return rows


def run_sweep(spec: SweepSpec, workers: int = 1) -> str:
    """CSV document for `spec`; byte-identical for any `workers`."""
    return rows_to_csv(sweep_rows(spec, workers))
