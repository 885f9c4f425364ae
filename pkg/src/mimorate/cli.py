"""Command-line front end: ``validate``, ``thresholds``, ``sweep`` and ``reproduce-fig``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .core import ConfigError, SystemConfig, db_to_linear
from .figures import DEFAULT_TRIALS, FIGURE_IDS, figure_defaults, figure_spec
from .sweep import Axis, Curve, SweepSpec, parse_range, read_csv, run_sweep
from .validation import run_validation, thresholds_report

log = logging.getLogger("mimorate")

DEFAULTS = dict(m=24, k=20, pt_db=0.0, pu_db=0.0, trials=DEFAULT_TRIALS, seed=0, workers=1)
CONFIG_KEYS = {
    "m": int, "k": int, "pt_db": float, "pu_db": float, "trials": int, "seed": int,
    "workers": int, "axis": str, "axis_range": str, "curves": str,
}


def read_config(path) -> dict:
    """Flat ``key = value`` file; blank lines and ``#`` comments are ignored."""
    out = {}
    for n, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or key not in CONFIG_KEYS:
            raise ConfigError(f"{path}:{n}: cannot parse {raw!r}")
        out[key] = CONFIG_KEYS[key](value.strip())
    return out


def _add_common(p, *, sweep=False):
    p.add_argument("--config", help="key = value file; command-line flags take precedence")
    p.add_argument("--m", type=int, help="number of BS antennas")
    p.add_argument("--k", type=int, help="number of users")
    p.add_argument("--pt-db", type=float, help="total downlink SNR in dB")
    p.add_argument("--pu-db", type=float, help="per-user uplink SNR in dB")
    p.add_argument("--trials", type=int, help=f"Monte-Carlo trials (default {DEFAULT_TRIALS})")
    p.add_argument("--seed", type=int, help="master seed (unsigned 64-bit)")
    p.add_argument("--workers", type=int, help="threads for Monte-Carlo chunks")
    if sweep:
        p.add_argument("--out", help="CSV output path (default: standard output)")
        p.add_argument("--axis", choices=[a.value for a in Axis])
        p.add_argument("--axis-range", help="start:stop[:step], stop inclusive")
        p.add_argument("--curves", help="comma-separated curve names")
        p.add_argument("--plot", action="store_true",
                       help="also render the curves to a PNG next to the CSV")


def build_parser():
    parser = argparse.ArgumentParser(prog="mimorate", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="run the self-check suite")
    _add_common(p)
    p.add_argument("--antennas", default="4,8,24", help="comma-separated M values")
    p.add_argument("--samples", type=int, default=100_000, help="moment samples per M")

    p = sub.add_parser("thresholds", help="print switching points and mode decisions")
    _add_common(p)

    p = sub.add_parser("sweep", help="run a custom sweep")
    _add_common(p, sweep=True)

    p = sub.add_parser("reproduce-fig", help="run a published figure's sweep")
    p.add_argument("figure", choices=FIGURE_IDS)
    _add_common(p, sweep=True)
    return parser


def _settings(args) -> dict:
    """Merge defaults < config file < explicit flags."""
    merged = dict(DEFAULTS)
    if args.config:
        merged.update(read_config(args.config))
    for key in CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    return merged


def _emit(args, csv_text, rows_axis, title, default_stem):
    if args.out:
        Path(args.out).write_text(csv_text, encoding="utf-8")
        log.info("wrote %s", args.out)
    else:
        sys.stdout.write(csv_text)
    if args.plot:
        from .plotting import plot_rows

        png = Path(args.out).with_suffix(".png") if args.out else Path(f"{default_stem}.png")
        plot_rows(read_csv(csv_text), png, rows_axis, title)
        log.info("wrote %s", png)


def cmd_validate(args, s):
    ms = tuple(int(x) for x in args.antennas.split(","))
    explicit_k = args.k is not None or (args.config and "k" in read_config(args.config))
    k = s["k"] if explicit_k else None
    report = run_validation(ms=ms, k=k, seed=s["seed"], samples=args.samples,
                            trials=min(s["trials"], DEFAULT_TRIALS))
    sys.stdout.write(report.text())
    return 0 if report.passed else 1


def cmd_thresholds(args, s):
    # Only report what was asked for explicitly.
    k = args.k
    pt = db_to_linear(args.pt_db) if args.pt_db is not None else None
    pu = db_to_linear(args.pu_db) if args.pu_db is not None else None
    sys.stdout.write(thresholds_report(s["m"], k, pt, pu))
    return 0


def cmd_sweep(args, s):
    if "axis" not in s or "axis_range" not in s or "curves" not in s:
        raise ConfigError("sweep needs --axis, --axis-range and --curves")
    axis = Axis(s["axis"])
    values = parse_range(s["axis_range"], integer=axis is not Axis.POWER_DB)
    cfg = SystemConfig(m=s["m"], k=s["k"], pt=db_to_linear(s["pt_db"]), pu=db_to_linear(s["pu_db"]),
                       trials=s["trials"], seed=s["seed"])
    curves = tuple(Curve.parse(c) for c in s["curves"].split(",") if c.strip())
    spec = SweepSpec(axis, values, cfg, curves)
    _emit(args, run_sweep(spec, s["workers"]), axis, "", "sweep")
    return 0


def cmd_reproduce(args, s):
    d = figure_defaults(args.figure)
    overrides = {}
    explicit = {key: getattr(args, key) for key in ("m", "k", "pt_db", "pu_db") if getattr(args, key) is not None}
    if args.config:
        explicit = {**{key: v for key, v in read_config(args.config).items() if key in ("m", "k", "pt_db", "pu_db")},
                    **explicit}
    overrides.update(explicit)
    if s.get("axis_range"):
        overrides["values"] = parse_range(s["axis_range"], integer=d["axis"] is not Axis.POWER_DB)
    if s.get("curves"):
        overrides["curves"] = tuple(c for c in s["curves"].split(",") if c.strip())
    spec = figure_spec(args.figure, trials=s["trials"], seed=s["seed"], **overrides)
    _emit(args, run_sweep(spec, s["workers"]), spec.axis, spec.title, f"fig{args.figure}")
    return 0


COMMANDS = {
    "validate": cmd_validate,
    "thresholds": cmd_thresholds,
    "sweep": cmd_sweep,
    "reproduce-fig": cmd_reproduce,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args, _settings(args))
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
