"""Command-line entry point.

Subcommands: ``evolve``, ``wigner``, ``theory``, ``fit``, ``report``.
Exit codes: 0 success, 2 configuration error, 3 truncation error,
4 failed check in ``report``.
"""

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path

from ..errors import ConfigError, TruncationError
from .config import RunConfig, config_from_dict, hbar_from_inverse, load_config
from .experiment import TimeSeries, run_decoherence_experiment, run_wigner_snapshots, theory_series
from .fitting import fit_gaussian_tau
from .report import emit_report

log = logging.getLogger("catdecay")

EXIT_OK, EXIT_CONFIG, EXIT_TRUNCATION, EXIT_CHECK = 0, 2, 3, 4
SERIES_FILE, CONFIG_FILE, REPORT_FILE, FIT_FILE = "timeseries.csv", "config.json", "report.txt", "fit.json"


def _resolve(args):
    cfg = load_config(args.config) if args.config else RunConfig()
    if args.hbar_inverse is not None:
        cfg = cfg.with_hbar(hbar_from_inverse(args.hbar_inverse))
    if args.mode is not None:
        cfg = replace(cfg, mode=args.mode)
    out = Path(args.out if args.out is not None else cfg.output_dir)
    cfg = replace(cfg, output_dir=str(out))
    out.mkdir(parents=True, exist_ok=True)
    (out / CONFIG_FILE).write_text(json.dumps(cfg.to_dict(), indent=2) + "\n")
    return cfg, out


def _fit(series, cfg):
    try:
        return {"F_e_numeric": fit_gaussian_tau(series, window=cfg.fit_window)}
    except ValueError as exc:
        log.warning("no Gaussian fit: %s", exc)
        return {}


def cmd_evolve(args):
    cfg, out = _resolve(args)
    series = run_decoherence_experiment(cfg)
    path = series.to_csv(out / SERIES_FILE)
    print(path)
    return EXIT_OK


def cmd_theory(args):
    cfg, out = _resolve(args)
    print(theory_series(cfg).to_csv(out / "theory.csv"))
    return EXIT_OK


def cmd_wigner(args):
    cfg, out = _resolve(args)
    _, metrics = run_wigner_snapshots(cfg, out_dir=out)
    (out / "wigner_metrics.json").write_text(json.dumps(metrics, indent=2) + "\n")
    for m in metrics:
        print(f"t={m['t']:g} min_W={m['min_W']:.4g} purity={m['purity']:.4f} "
              f"quadrature={m['purity_quadrature']:.4f}")
    return EXIT_OK


def cmd_fit(args):
    csv_path = Path(args.csv) if args.csv else Path(args.out or ".") / SERIES_FILE
    series = TimeSeries.from_csv(csv_path)
    try:
        fit = fit_gaussian_tau(series, column=args.column, window=tuple(args.window))
    except (KeyError, ValueError) as exc:
        print(f"fit error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    result = {"column": args.column, "tau": fit.tau, "residual": fit.residual,
              "n_points": fit.n_points, "window": list(fit.window)}
    (csv_path.parent / FIT_FILE).write_text(json.dumps(result, indent=2) + "\n")
    print(json.dumps(result))
    return EXIT_OK


def cmd_report(args):
    out = Path(args.out or ".")
    if args.config:
        cfg = load_config(args.config)
    elif (out / CONFIG_FILE).exists():
        cfg = config_from_dict(json.loads((out / CONFIG_FILE).read_text()))
    else:
        cfg = RunConfig()
    if args.hbar_inverse is not None:
        cfg = cfg.with_hbar(hbar_from_inverse(args.hbar_inverse))
    if args.mode is not None:
        cfg = replace(cfg, mode=args.mode)
    if (out / SERIES_FILE).exists():
        series = TimeSeries.from_csv(out / SERIES_FILE)
    else:
        out.mkdir(parents=True, exist_ok=True)
        series = run_decoherence_experiment(cfg)
        series.to_csv(out / SERIES_FILE)
    metrics = None
    if (out / "wigner_metrics.json").exists():
        metrics = json.loads((out / "wigner_metrics.json").read_text())
    report = emit_report(series, _fit(series, cfg), cfg, out / REPORT_FILE, metrics)
    sys.stdout.write(report.text)
    return EXIT_OK if report.passed else EXIT_CHECK


def build_parser():
    parser = argparse.ArgumentParser(prog="catdecay", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON run configuration")
        p.add_argument("--out", help="output directory (default: config output_dir)")
        p.add_argument("--hbar-inverse", type=int, help="override hbar = 1/N")
        p.add_argument("--mode", choices=("full", "echo", "effective"))
        return p

    common(sub.add_parser("evolve", help="purity / F_e time series")).set_defaults(func=cmd_evolve)
    common(sub.add_parser("wigner", help="Wigner snapshots of the central state")).set_defaults(func=cmd_wigner)
    common(sub.add_parser("theory", help="closed-form curves only")).set_defaults(func=cmd_theory)
    common(sub.add_parser("report", help="theory vs numerics summary")).set_defaults(func=cmd_report)
    p = sub.add_parser("fit", help="Gaussian fit of an existing CSV")
    p.add_argument("--csv", help="time-series CSV (default: <out>/timeseries.csv)")
    p.add_argument("--out", help="run directory")
    p.add_argument("--column", default="F_e_numeric")
    p.add_argument("--window", type=float, nargs=2, default=(0.2, 0.9), metavar=("LO", "HI"))
    p.set_defaults(func=cmd_fit)
    return parser


def main(argv=None):
    logging.basicConfig(level=logging.INFO, format="%(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except TruncationError as exc:
        print(f"truncation error: {exc}", file=sys.stderr)
        return EXIT_TRUNCATION


if __name__ == "__main__":
    sys.exit(main())
