"""End-to-end forecasting experiment: data, windows, split, fit, evaluate, report."""

import hashlib
import json
import logging
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from . import ingest as ingest_mod
from .errors import ConfigError, TrajRiskError
from .predictors import FlatPredictor, NNIndex, OracleSpec, ZeroPredictor, fit_linear_one_param
from .report import emit_report, write_json, write_manifest
from .risk import compare_report, trajectory_losses
from .sim import ProcessModel, simulate_path, write_path_csv
from .windows import chrono_split, dataset_to_csv, make_windows, windows_from_sessions

log = logging.getLogger(__name__)

PREDICTORS = ("flat", "zero", "linear", "nn", "oracle")


class StageError(TrajRiskError):
    """Wraps a module error with the pipeline stage it came from."""

    def __init__(self, stage, error):
        super().__init__(f"[{stage}] {error}")
        self.stage = stage
        self.error = error


@dataclass
class ExperimentConfig:
    """Declarative experiment description.

    ``mode="synthetic"`` simulates one path of ``process``; its length is
    ``T``, or is derived from ``n_windows`` when given. ``mode="ingest"``
    reads ``data_path`` and builds one window per qualifying session.
    ``stride=None`` means ``H`` for synthetic paths. Predictor names are
    ``flat``, ``zero``, ``linear``, ``nn``, ``knn<k>`` and ``oracle``.
    """

    mode: str = "synthetic"
    process: dict = field(
        default_factory=lambda: {"kind": "gaussian_random_walk", "x0": 1.0, "sigma": 0.1}
    )
    T: int | None = None
    n_windows: int | None = 1200
    data_path: str | None = None
    timestamp_col: str = "timestamp"
    price_col: str = "price"
    session_start: str = "13:00"
    session_end: str = "18:00"
    interval: float = 30
    min_coverage: float = 0.95
    L: int = 20
    H: int = 30
    stride: int | None = None
    fractions: tuple = (0.70, 0.10, 0.20)
    predictors: tuple = ("flat", "linear", "nn")
    compare: tuple = ("nn", "linear")
    seed: int = 0
    output_dir: str | None = None

    def __post_init__(self):
        self.fractions = tuple(self.fractions)
        self.predictors = tuple(self.predictors)
        self.compare = tuple(self.compare)
        if self.mode not in ("synthetic", "ingest"):
            raise ConfigError(f"mode must be 'synthetic' or 'ingest', got {self.mode!r}")
        for name in ("L", "H"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise ConfigError(f"{name} must be an integer >= 1, got {v!r}")
        if self.stride is not None and (not isinstance(self.stride, int) or self.stride < 1):
            raise ConfigError("stride must be an integer >= 1")
        if self.seed < 0:
            raise ConfigError("seed must be non-negative")
        if self.mode == "synthetic":
            self.process_model()
            if self.T is None and self.n_windows is None:
                raise ConfigError("synthetic mode needs T or n_windows")
        elif not self.data_path:
            raise ConfigError("ingest mode needs data_path")
        for p in self.predictors:
            if p not in PREDICTORS and not (p.startswith("knn") and p[3:].isdigit() and int(p[3:]) >= 1):
                raise ConfigError(f"unknown predictor {p!r}")
        if "oracle" in self.predictors and self.mode != "synthetic":
            raise ConfigError("the oracle predictor needs synthetic data")
        if len(self.compare) != 2 or any(c not in self.predictors for c in self.compare):
            raise ConfigError("compare must name two configured predictors")

    def process_model(self):
        try:
            return ProcessModel.from_dict(self.process)
        except TypeError as exc:
            raise ConfigError(f"bad process description: {exc}") from exc

    @property
    def effective_stride(self):
        if self.stride is not None:
            return self.stride
        return self.H if self.mode == "synthetic" else 1

    @property
    def path_length(self):
        if self.T is not None:
            return self.T
        return self.L + self.H + (self.n_windows - 1) * self.effective_stride

    def to_dict(self):
        d = asdict(self)
        d.pop("output_dir")
        for k in ("fractions", "predictors", "compare"):
            d[k] = list(d[k])
        return d

    def digest(self):
        blob = json.dumps(self.to_dict(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()

    @classmethod
    def from_dict(cls, d):
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        try:
            return cls(**d)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc

    @classmethod
    def load(cls, path, **overrides):
        """Read a JSON config file; non-None ``overrides`` win over file values."""
        try:
            d = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        d.update({k: v for k, v in overrides.items() if v is not None})
        return cls.from_dict(d)


def _stage(name, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except TrajRiskError as exc:
        raise StageError(name, exc) from exc


def _build_predictors(cfg, train, model):
    out = {}
    for name in cfg.predictors:
        if name == "flat":
            out[name] = FlatPredictor(cfg.H)
        elif name == "zero":
            out[name] = ZeroPredictor(cfg.H)
        elif name == "linear":
            out[name] = fit_linear_one_param(train)
        elif name == "nn":
            out[name] = NNIndex.from_dataset(train)
        elif name.startswith("knn"):
            out[name] = NNIndex.from_dataset(train, k=int(name[3:]), label=name)
        elif name == "oracle":
            mode = "flat_martingale" if model.is_martingale else "structured_mean"
            out[name] = OracleSpec(model, mode, cfg.H)
    return out


def run_experiment(cfg):
    """Run the full pipeline and return the comparison report.

    When ``cfg.output_dir`` is set, the source data, window datasets,
    fitted predictors, report files and a hashed manifest are written there.
    """
    out_dir = Path(cfg.output_dir) if cfg.output_dir else None
    artifacts = []
    model = None
    extra = {"config": cfg.to_dict(), "config_sha256": cfg.digest()}

    if cfg.mode == "synthetic":
        model = cfg.process_model()
        path = _stage("simulate", simulate_path, model, cfg.path_length, cfg.seed)
        data = _stage("windows", make_windows, path, cfg.L, cfg.H, cfg.effective_stride)
        if out_dir:
            out_dir.mkdir(parents=True, exist_ok=True)
            write_path_csv(path, out_dir / "path.csv")
            artifacts.append(out_dir / "path.csv")
    else:
        ticks = _stage(
            "ingest", ingest_mod.ingest_ticks, cfg.data_path, cfg.timestamp_col, cfg.price_col
        )
        sess = _stage(
            "sessionize",
            ingest_mod.sessionize,
            ticks,
            cfg.session_start,
            cfg.session_end,
            cfg.interval,
            cfg.min_coverage,
        )
        data = _stage("windows", windows_from_sessions, sess.paths, cfg.L, cfg.H)
        extra["sessions"] = {
            "kept": len(sess.sessions),
            "grid_points": sess.grid_points,
            "dropped": [{"day": d, "coverage": c} for d, c in sess.dropped],
        }
        if out_dir:
            out_dir.mkdir(parents=True, exist_ok=True)
            ingest_mod.sessions_to_csv(sess, out_dir / "sessions.csv")
            artifacts.append(out_dir / "sessions.csv")

    split = _stage("split", chrono_split, data, cfg.fractions)
    extra["split"] = {"train": len(split.train), "val": len(split.val), "test": len(split.test)}
    log.info("windows: %d total, split %s", len(data), extra["split"])

    preds = _stage("fit", _build_predictors, cfg, split.train, model)
    losses = {name: _stage("evaluate", trajectory_losses, p, split.test) for name, p in preds.items()}
    if "linear" in preds:
        extra["linear_coefficient"] = preds["linear"].a

    a, b = cfg.compare
    others = {k: v for k, v in losses.items() if k not in (a, b)}
    report = _stage(
        "report", compare_report, losses[a], losses[b], (a, b), others, split.test.anchors
    )
    report.extra.update(extra)

    if out_dir:
        for part in ("train", "val", "test"):
            target = out_dir / f"windows_{part}.csv"
            dataset_to_csv(getattr(split, part), target)
            artifacts.append(target)
        fitted = {}
        for name, p in preds.items():
            if isinstance(p, NNIndex):
                fitted[name] = p.to_dict(dataset_ref="windows_train.csv")
            else:
                fitted[name] = p.to_dict()
            fitted[name].update({"L": cfg.L, "H": cfg.H})
        artifacts.append(write_json(out_dir / "predictors.json", fitted))
        artifacts.extend(_stage("emit", emit_report, report, out_dir))
        write_manifest(out_dir, artifacts, cfg.digest(), cfg.seed)
    return report


def losses_table(report):
    """Mean risks sorted from best to worst, as ``[(label, risk, se), ...]``."""
    return sorted(
        ((k, v, report.risk_se[k]) for k, v in report.mean_risk.items()), key=lambda r: r[1]
    )

