"""Command-line interface.

Subcommands: ``simulate``, ``ingest``, ``run``, ``verify-bounds``, ``report``.
Exit codes: 0 success, 1 configuration error, 2 data error, 3 internal error.
The default output directory comes from ``$TRAJRISK_OUTPUT_DIR`` (else
``./trajrisk-out``).
"""

import argparse
import hashlib
import json
import logging
import os
import sys
from dataclasses import asdict
from pathlib import Path

import numpy as np

from .bounds import DesignSpec, run_bound_suite
from .errors import ConfigError, DataError, TrajRiskError
from .experiment import ExperimentConfig, StageError, losses_table, run_experiment
from .ingest import ingest_ticks, sessionize, sessions_to_csv
from .report import OutputError, emit_report, write_json, write_manifest
from .sim import ProcessModel, StructureParams, VolParams, simulate_path, write_path_csv

EXIT_OK, EXIT_CONFIG, EXIT_DATA, EXIT_INTERNAL = 0, 1, 2, 3
ENV_OUTPUT = "TRAJRISK_OUTPUT_DIR"

log = logging.getLogger("trajrisk")


def _default_out():
    return os.environ.get(ENV_OUTPUT, "trajrisk-out")


def _cmd_simulate(args):
    vol = structure = None
    if args.kind == "heteroskedastic_martingale":
        vol = VolParams(args.omega, args.alpha, args.beta, args.v_max)
    if args.kind == "structured_seasonal":
        structure = StructureParams(args.amplitude, args.period, args.trend)
    model = ProcessModel(args.kind, args.x0, args.sigma, vol, structure)
    path = simulate_path(model, args.T, args.seed)
    out = Path(args.output or Path(_default_out()) / "path.csv")
    out.parent.mkdir(parents=True, exist_ok=True)
    write_path_csv(path, out)
    print(f"wrote {len(path)} values to {out}")


def _cmd_ingest(args):
    ticks = ingest_ticks(args.data, args.timestamp_col, args.price_col)
    res = sessionize(ticks, args.start, args.end, args.interval, args.min_coverage)
    out = Path(args.output_dir or _default_out())
    out.mkdir(parents=True, exist_ok=True)
    sessions_to_csv(res, out / "sessions.csv")
    write_json(
        out / "sessions.json",
        {
            "ticks": len(ticks),
            "grid_points": res.grid_points,
            "kept": [s.day for s in res.sessions],
            "dropped": [{"day": d, "coverage": c} for d, c in res.dropped],
        },
    )
    print(f"{len(res.sessions)} sessions of {res.grid_points} points kept, {len(res.dropped)} dropped")


def _experiment_config(args):
    overrides = {
        "mode": args.mode,
        "seed": args.seed,
        "L": args.L,
        "H": args.H,
        "stride": args.stride,
        "data_path": args.data,
        "output_dir": args.output_dir,
    }
    if args.config:
        cfg = ExperimentConfig.load(args.config, **overrides)
    else:
        cfg = ExperimentConfig.from_dict({k: v for k, v in overrides.items() if v is not None})
    if cfg.output_dir is None:
        cfg.output_dir = _default_out()
    return cfg


def _cmd_run(args):
    cfg = _experiment_config(args)
    report = run_experiment(cfg)
    a, b = report.labels
    print(f"test windows: {report.N}   output: {cfg.output_dir}")
    for label, risk, se in losses_table(report):
        print(f"  {label:>10s}  risk {risk:.6g} +/- {se:.2g}")
    print(f"  risk ratio {a}/{b}: {report.risk_ratio_A_over_B:.4f}")
    print(f"  P({a} loss > {b} loss): {report.win_rate_A_over_B:.4f}")


BOUND_KEYS = {
    "design", "n_grid", "reps", "seed", "ratio_n", "ratio_t", "tail_reps",
    "prop_n_grid", "prop_reps", "prop_test_windows", "erm_n_grid", "erm_reps", "vn_grid",
}


def _bound_settings(args):
    settings = {}
    if args.config:
        try:
            settings = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
    unknown = set(settings) - BOUND_KEYS - {"output_dir"}
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    out_dir = args.output_dir or settings.pop("output_dir", None) or _default_out()
    settings.pop("output_dir", None)
    if args.quick:
        settings.update(
            n_grid=[50, 100, 200], reps=500, tail_reps=1000, prop_n_grid=[50, 100],
            prop_reps=20, prop_test_windows=1000, erm_n_grid=[10, 100, 1000], erm_reps=50,
        )
    for key in ("seed", "reps", "tail_reps"):
        v = getattr(args, key)
        if v is not None:
            settings[key] = v
    if "design" in settings:
        settings["design"] = DesignSpec.from_dict(settings["design"])
    if "vn_grid" in settings:
        settings["vn_grid"] = [
            (DesignSpec.from_dict(d) if d else settings.get("design", DesignSpec()), n, eta)
            for d, n, eta in settings["vn_grid"]
        ]
    return settings, out_dir


def _settings_digest(settings):
    blob = json.dumps(settings, sort_keys=True, default=lambda o: asdict(o))
    return hashlib.sha256(blob.encode()).hexdigest()


def _cmd_verify_bounds(args):
    settings, out_dir = _bound_settings(args)
    report = run_bound_suite(**settings)
    files = emit_report(report, out_dir)
    write_manifest(out_dir, files, _settings_digest(settings), report.seed)
    c = report.coeff
    print(f"coefficient MSE slope {c.loglog_slope:.3f}; dominated at all n: {all(c.dominated())}")
    tails = [p for p in report.vn_tail if not p.vacuous]
    print(f"V_n tail: {sum(p.holds() for p in tails)}/{len(tails)} non-vacuous points hold")
    ratio = [p for p in report.ratio_tail if not p.vacuous]
    print(f"ratio tail: {sum(p.holds() for p in ratio)}/{len(ratio)} non-vacuous points hold")
    if report.prop_risks:
        print(f"linear excess-risk slope {report.prop_risks.linear_excess_slope:.3f}")
    if report.erm:
        ok = all(p.samplewise_ok_fraction == 1.0 for p in report.erm.points)
        print(f"ERM: regret <= 2 Delta in every replication: {ok}")
    print(f"wrote {len(files)} files to {out_dir}")


def _quantiles(values, fractions):
    """Loss at given cumulative fractions, read off ECDF points."""
    idx = np.searchsorted(fractions, [0.1, 0.25, 0.5, 0.75, 0.9], side="left")
    return values[np.minimum(idx, len(values) - 1)]


def _cmd_report(args):
    d = Path(args.directory)
    try:
        summary = json.loads((d / "summary.json").read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise DataError(f"cannot read {d / 'summary.json'}: {exc}") from exc
    if "mean_risk" in summary:
        a, b = summary["labels"]["A"], summary["labels"]["B"]
        print(f"N = {summary['N']}")
        cols = ("P10", "P25", "median", "P75", "P90")
        print(f"{'predictor':>12s} {'risk':>12s} " + " ".join(f"{c:>10s}" for c in cols))
        for label, fname in summary["files"]["ecdf"].items():
            rows = np.loadtxt(d / fname, delimiter=",", skiprows=1, ndmin=2)
            q = _quantiles(rows[:, 0], rows[:, 1])
            print(f"{label:>12s} {summary['mean_risk'][label]:12.6g} " + " ".join(f"{v:10.4g}" for v in q))
        print(f"risk ratio {a}/{b} = {summary['risk_ratio_A_over_B']:.4f}")
        print(f"P({a} > {b}) = {summary['win_rate_A_over_B']:.4f}")
    else:
        print(f"seed {summary['seed']}, reps {summary['reps']}")
        print(f"{'n':>6s} {'mse_hat':>12s} {'se':>10s} {'bound':>12s}")
        for row in zip(summary["n_grid"], summary["mse_hat"], summary["mse_se"], summary["mse_bound"]):
            print(f"{row[0]:6d} {row[1]:12.4g} {row[2]:10.2g} {row[3]:12.4g}")
        print(f"log-log slope {summary['loglog_slope']:.3f}")


def build_parser():
    p = argparse.ArgumentParser(
        prog="trajrisk", description="Trajectory forecasting risk experiments and bound checks."
    )
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simulate", help="simulate a price path to CSV")
    s.add_argument("--kind", default="gaussian_random_walk")
    s.add_argument("--x0", type=float, default=1.0)
    s.add_argument("--sigma", type=float, default=0.01)
    s.add_argument("--T", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--omega", type=float, default=1e-6)
    s.add_argument("--alpha", type=float, default=0.05)
    s.add_argument("--beta", type=float, default=0.9)
    s.add_argument("--v-max", type=float, default=None)
    s.add_argument("--amplitude", type=float, default=0.0)
    s.add_argument("--period", type=int, default=1)
    s.add_argument("--trend", type=float, default=0.0)
    s.add_argument("-o", "--output")
    s.set_defaults(func=_cmd_simulate)

    s = sub.add_parser("ingest", help="resample a tick CSV onto daily session grids")
    s.add_argument("data")
    s.add_argument("--timestamp-col", default="timestamp")
    s.add_argument("--price-col", default="price")
    s.add_argument("--start", default="13:00")
    s.add_argument("--end", default="18:00")
    s.add_argument("--interval", type=float, default=30)
    s.add_argument("--min-coverage", type=float, default=0.95)
    s.add_argument("-o", "--output-dir")
    s.set_defaults(func=_cmd_ingest)

    s = sub.add_parser("run", help="run a forecasting experiment")
    s.add_argument("-c", "--config")
    s.add_argument("--mode", choices=["synthetic", "ingest"])
    s.add_argument("--data")
    s.add_argument("--seed", type=int)
    s.add_argument("--L", type=int)
    s.add_argument("--H", type=int)
    s.add_argument("--stride", type=int)
    s.add_argument("-o", "--output-dir")
    s.set_defaults(func=_cmd_run)

    s = sub.add_parser("verify-bounds", help="Monte-Carlo check of the risk and tail bounds")
    s.add_argument("-c", "--config")
    s.add_argument("--seed", type=int)
    s.add_argument("--reps", type=int)
    s.add_argument("--tail-reps", type=int)
    s.add_argument("--quick", action="store_true", help="small grids for a fast smoke run")
    s.add_argument("-o", "--output-dir")
    s.set_defaults(func=_cmd_verify_bounds)

    s = sub.add_parser("report", help="summarize a report directory")
    s.add_argument("directory")
    s.set_defaults(func=_cmd_report)
    return p


def _exit_code(exc):
    if isinstance(exc, StageError):
        exc = exc.error
    if isinstance(exc, ConfigError):
        return EXIT_CONFIG
    if isinstance(exc, (DataError, OutputError, OSError)):
        return EXIT_DATA
    return EXIT_INTERNAL


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        args.func(args)
    except TrajRiskError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _exit_code(exc)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # noqa: BLE001
        log.exception("internal error")
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
