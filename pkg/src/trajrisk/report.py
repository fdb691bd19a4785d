"""Writing reports to disk: JSON summaries, CSV curves and a hashed manifest.

Output layout
-------------
RiskReport
    ``summary.json``, ``ecdf_<label>.csv`` (columns ``loss,fraction``) for
    every evaluated predictor, ``logratio.csv`` (``t,log10_ratio``).
BoundReport
    ``summary.json``, ``curves.csv`` (``n,estimate,se,bound,bound_se``),
    ``vn_tail.csv``, ``ratio_tail.csv``, plus ``prop_risks.csv`` and
    ``erm.csv`` when those checks ran.
"""

import csv
import hashlib
import json
import platform
import re
from importlib import metadata
from pathlib import Path

import numpy as np

from .bounds import BoundReport
from .errors import TrajRiskError
from .risk import RiskReport


class OutputError(TrajRiskError, OSError):
    """A report directory cannot be created or written."""


def _directory(directory):
    if directory is None or str(directory).strip() == "":
        raise OutputError("output directory must be a non-empty path")
    d = Path(directory)
    try:
        d.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OutputError(f"cannot create {d}: {exc}") from exc
    return d


def _write_csv(path, header, rows):
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_cell(v) for v in row])
    return path


def _cell(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, np.integer):
        return int(v)
    return v


def _safe_label(label):
    return re.sub(r"[^A-Za-z0-9_.-]", "_", label)


def write_json(path, obj):
    path.write_text(json.dumps(obj, sort_keys=True, indent=2) + "\n")
    return path


def emit_report(report, directory):
    """Write ``report`` under ``directory``; return the written paths in order."""
    d = _directory(directory)
    try:
        if isinstance(report, RiskReport):
            return _emit_risk(report, d)
        if isinstance(report, BoundReport):
            return _emit_bounds(report, d)
    except OSError as exc:
        if isinstance(exc, OutputError):
            raise
        raise OutputError(str(exc)) from exc
    raise TypeError(f"cannot emit {type(report).__name__}")


def _emit_risk(report, d):
    summary = report.to_dict()
    summary["files"] = {
        "ecdf": {k: f"ecdf_{_safe_label(k)}.csv" for k in report.ecdf},
        "logratio": "logratio.csv",
    }
    out = [write_json(d / "summary.json", summary)]
    for label, (values, frac) in report.ecdf.items():
        out.append(
            _write_csv(d / f"ecdf_{_safe_label(label)}.csv", ["loss", "fraction"], zip(values, frac))
        )
    rows = zip(report.ratio_anchors, report.log10_ratios)
    out.append(_write_csv(d / "logratio.csv", ["t", "log10_ratio"], rows))
    return out


def _emit_bounds(report, d):
    out = [write_json(d / "summary.json", report.to_dict())]
    out.append(
        _write_csv(d / "curves.csv", ["n", "estimate", "se", "bound", "bound_se"], report.curve_rows())
    )
    out.append(
        _write_csv(
            d / "vn_tail.csv",
            ["n", "eta", "threshold", "frequency", "se", "bound", "vacuous"],
            [(p.n, p.eta, p.threshold, p.frequency, p.se, p.bound, p.vacuous) for p in report.vn_tail],
        )
    )
    out.append(
        _write_csv(
            d / "ratio_tail.csv",
            ["t", "frequency", "frequency_se", "bound", "bound_se", "vacuous"],
            [(p.t, p.frequency, p.frequency_se, p.bound, p.bound_se, p.vacuous) for p in report.ratio_tail],
        )
    )
    if report.prop_risks is not None:
        rows = [
            (
                p.n,
                p.nn_risk.mean,
                p.nn_risk.se,
                p.linear_risk.mean,
                p.linear_risk.se,
                p.linear_excess.mean,
                p.linear_excess.se,
                p.nn_design_term.mean,
                p.noise_floor,
            )
            for p in report.prop_risks.points
        ]
        header = ["n", "nn_risk", "nn_se", "linear_risk", "linear_se", "linear_excess",
                  "linear_excess_se", "nn_design_term", "noise_floor"]
        out.append(_write_csv(d / "prop_risks.csv", header, rows))
    if report.erm is not None:
        rows = [
            (p.n, p.delta.mean, p.delta.se, p.regret.mean, p.regret.se,
             p.select_true_frequency, p.samplewise_ok_fraction)
            for p in report.erm.points
        ]
        header = ["n", "delta", "delta_se", "regret", "regret_se", "select_true_frequency",
                  "samplewise_ok_fraction"]
        out.append(_write_csv(d / "erm.csv", header, rows))
    return out


def sha256_file(path):
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def versions():
    out = {"python": platform.python_version(), "numpy": np.__version__}
    try:
        out["trajrisk"] = metadata.version("artifact")
    except metadata.PackageNotFoundError:
        out["trajrisk"] = "unknown"
    return out


def write_manifest(directory, artifacts, config_hash, seed):
    """Plain-text manifest: config hash, seed, versions, then ``sha256  name`` per artifact."""
    d = Path(directory)
    lines = [f"config_sha256 {config_hash}", f"seed {seed}"]
    lines += [f"version {k} {v}" for k, v in sorted(versions().items())]
    for p in artifacts:
        p = Path(p)
        lines.append(f"artifact {sha256_file(p)}  {p.relative_to(d).as_posix()}")
    path = d / "manifest.txt"
    path.write_text("\n".join(lines) + "\n")
    return path


def read_manifest(path):
    """Map artifact name to hash from a manifest file."""
    out = {}
    for line in Path(path).read_text().splitlines():
        if line.startswith("artifact "):
            _, digest, name = line.split(maxsplit=2)
            out[name.strip()] = digest
    return out
