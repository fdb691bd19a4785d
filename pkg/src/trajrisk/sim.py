"""Seeded sample paths for martingale and structured price processes.

Three process kinds are supported:

``gaussian_random_walk``
    ``X[t+1] = X[t] + sigma * Z[t]``.
``heteroskedastic_martingale``
    ``X[t+1] = X[t] + sqrt(v[t]) * Z[t]`` with the GARCH-style recursion
    ``v[t+1] = min(omega + alpha * eps[t]**2 + beta * v[t], v_max)``.
``structured_seasonal``
    ``X[t+1] = g(t+1) + sigma * Z[t]`` with
    ``g(s) = x0 + trend * s + amplitude * sin(2 pi s / period)``.

Innovations are stored as the realized floating-point increments, so
``values[t+1] == conditional_means[t] + innovations[t]`` holds bit for bit
and, for the martingale kinds, ``np.diff(values) == innovations`` too.
"""

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path as FsPath

import numpy as np

from .errors import InvalidLengthError, InvalidModelError
from .rng import stream

KINDS = ("gaussian_random_walk", "heteroskedastic_martingale", "structured_seasonal")
MARTINGALE_KINDS = ("gaussian_random_walk", "heteroskedastic_martingale")


@dataclass(frozen=True)
class VolParams:
    omega: float
    alpha: float
    beta: float
    # Cap on the conditional variance; None means 25 * sigma**2.
    v_max: float | None = None


@dataclass(frozen=True)
class StructureParams:
    amplitude: float = 0.0
    period: int = 1
    trend: float = 0.0


@dataclass(frozen=True)
class ProcessModel:
    """Parameters of a simulated price process.

    Invariants are checked on construction and raise
    :class:`~trajrisk.errors.InvalidModelError`.
    """

    kind: str
    x0: float = 0.0
    sigma: float = 0.0
    vol_params: VolParams | None = None
    structure_params: StructureParams | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidModelError(f"unknown process kind {self.kind!r}")
        if not (math.isfinite(self.x0) and math.isfinite(self.sigma)):
            raise InvalidModelError("x0 and sigma must be finite")
        if self.sigma < 0:
            raise InvalidModelError("sigma must be >= 0")
        if self.kind == "heteroskedastic_martingale":
            vp = self.vol_params
            if vp is None:
                raise InvalidModelError("heteroskedastic kind needs vol_params")
            if min(vp.omega, vp.alpha, vp.beta) < 0:
                raise InvalidModelError("omega, alpha, beta must be >= 0")
            if vp.omega <= 0:
                raise InvalidModelError("omega must be > 0")
            if vp.alpha + vp.beta >= 1:
                raise InvalidModelError("alpha + beta must be < 1")
            if self.variance_cap <= 0:
                raise InvalidModelError("variance cap must be > 0 (set sigma > 0 or v_max)")
        if self.kind == "structured_seasonal":
            sp = self.structure_params
            if sp is None:
                raise InvalidModelError("structured kind needs structure_params")
            if int(sp.period) != sp.period or sp.period < 1:
                raise InvalidModelError("period must be an integer >= 1")

    @property
    def is_martingale(self):
        return self.kind in MARTINGALE_KINDS

    @property
    def variance_cap(self):
        if self.vol_params is None:
            return None
        if self.vol_params.v_max is not None:
            return float(self.vol_params.v_max)
        return 25.0 * self.sigma**2

    def structure_mean(self, s):
        """Deterministic level ``g(s)`` of the structured kind at time(s) ``s``."""
        sp = self.structure_params
        if sp is None:
            raise InvalidModelError("model has no structure_params")
        s = np.asarray(s, dtype=np.float64)
        return self.x0 + sp.trend * s + sp.amplitude * np.sin(2.0 * np.pi * s / sp.period)

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        if d.get("vol_params") is not None:
            d["vol_params"] = VolParams(**d["vol_params"])
        if d.get("structure_params") is not None:
            d["structure_params"] = StructureParams(**d["structure_params"])
        return cls(**d)


def _frozen(a):
    a = np.array(a, dtype=np.float64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Path:
    """A sampled trajectory with the noise that produced it.

    ``values`` has length ``T``; ``innovations``, ``conditional_means`` and
    ``variances`` (when present) have length ``T - 1`` and describe the
    transition into ``values[t + 1]``.
    """

    values: np.ndarray
    model: ProcessModel | None = None
    seed: int = 0
    innovations: np.ndarray | None = None
    conditional_means: np.ndarray | None = None
    variances: np.ndarray | None = None
    is_returns: bool = False
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen(self.values))
        if self.values.ndim != 1 or len(self.values) < 2:
            raise InvalidLengthError("a path needs at least 2 values")
        for name in ("innovations", "conditional_means", "variances"):
            arr = getattr(self, name)
            if arr is not None:
                arr = _frozen(arr)
                if arr.shape != (len(self.values) - 1,):
                    raise InvalidLengthError(f"{name} must have length T - 1")
                object.__setattr__(self, name, arr)

    def __len__(self):
        return len(self.values)


def _settle(base, draws):
    """Return ``(nxt, inc)`` with ``nxt == base + inc`` and ``inc == nxt - base`` exactly."""
    nxt = base + draws
    inc = nxt - base
    bad = base + inc != nxt
    for _ in range(8):
        if not bad.any():
            return nxt, inc
        nxt = np.where(bad, base + inc, nxt)
        inc = np.where(bad, nxt - base, inc)
        bad = base + inc != nxt
    raise ArithmeticError("could not settle floating-point increments")


def _settle_scalar(base, draw):
    nxt, inc = _settle(np.array([base]), np.array([draw]))
    return float(nxt[0]), float(inc[0])


def simulate_path(model, T, seed):
    """Simulate ``T`` values of ``model`` from the stream keyed by ``seed``.

    The same ``(model, T, seed)`` always reproduces bit-identical arrays.
    """
    if not isinstance(model, ProcessModel):
        raise InvalidModelError("model must be a ProcessModel")
    if int(T) != T or T < 2:
        raise InvalidLengthError(f"T must be an integer >= 2, got {T!r}")
    T = int(T)
    z = stream(seed, 0).standard_normal(T - 1)
    values = np.empty(T)
    values[0] = model.x0
    variances = None
    meta = {}

    if model.kind == "gaussian_random_walk":
        draws = model.sigma * z
        values[1:] = np.cumsum(np.concatenate(([model.x0], draws)))[1:]
        innov = np.diff(values)
        if not np.array_equal(values[:-1] + innov, values[1:]):
            innov = np.empty(T - 1)
            for t in range(T - 1):
                values[t + 1], innov[t] = _settle_scalar(values[t], draws[t])
        cond = values[:-1].copy()
    elif model.kind == "heteroskedastic_martingale":
        vp = model.vol_params
        cap = model.variance_cap
        innov = np.empty(T - 1)
        variances = np.empty(T - 1)
        v = min(vp.omega / (1.0 - vp.alpha - vp.beta), cap)
        for t in range(T - 1):
            variances[t] = v
            values[t + 1], innov[t] = _settle_scalar(values[t], math.sqrt(v) * z[t])
            v = min(vp.omega + vp.alpha * innov[t] ** 2 + vp.beta * v, cap)
        cond = values[:-1].copy()
        meta["v_max"] = cap
    else:
        cond = model.structure_mean(np.arange(1, T))
        values[1:], innov = _settle(cond, model.sigma * z)

    return Path(
        values=values,
        model=model,
        seed=int(seed),
        innovations=innov,
        conditional_means=cond,
        variances=variances,
        metadata=meta,
    )


def path_to_returns(path):
    """One-step differences ``R[t] = X[t+1] - X[t]`` as a path of length ``T - 1``.

    For martingale inputs the returns have zero conditional mean and their
    innovations are the returns themselves.
    """
    if len(path.values) < 3:
        # A returns path must itself satisfy T >= 2.
        raise InvalidLengthError("need at least 3 values to form a returns path")
    r = np.diff(path.values)
    innov = cond = None
    if path.model is not None and path.model.is_martingale and not path.is_returns:
        innov = r[1:]
        cond = np.zeros(len(r) - 1)
    return Path(
        values=r,
        model=path.model,
        seed=path.seed,
        innovations=innov,
        conditional_means=cond,
        is_returns=True,
        metadata=dict(path.metadata),
    )


def _header(path):
    info = {
        "model": path.model.to_dict() if path.model is not None else None,
        "seed": path.seed,
        "T": len(path.values),
        "is_returns": path.is_returns,
    }
    return "# " + json.dumps(info, sort_keys=True)


def write_path_csv(path, dest):
    """Write ``path`` as CSV with a JSON header comment (model, seed, T)."""
    buf = io.StringIO()
    buf.write(_header(path) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "value", "innovation", "conditional_mean"])
    n = len(path.values)
    for t in range(n):
        row = [t, repr(float(path.values[t]))]
        for arr in (path.innovations, path.conditional_means):
            row.append(repr(float(arr[t])) if arr is not None and t < n - 1 else "")
        w.writerow(row)
    FsPath(dest).write_text(buf.getvalue())


def read_path_csv(src):
    """Inverse of :func:`write_path_csv`."""
    text = FsPath(src).read_text().splitlines()
    if not text or not text[0].startswith("#"):
        raise InvalidLengthError(f"{src}: missing header comment")
    info = json.loads(text[0][1:])
    rows = list(csv.DictReader(text[1:]))
    values = [float(r["value"]) for r in rows]

    def column(name):
        col = [r[name] for r in rows[:-1]]
        return [float(c) for c in col] if col and all(col) else None

    model = ProcessModel.from_dict(info["model"]) if info.get("model") else None
    return Path(
        values=values,
        model=model,
        seed=info.get("seed", 0),
        innovations=column("innovation"),
        conditional_means=column("conditional_mean"),
        is_returns=info.get("is_returns", False),
    )
