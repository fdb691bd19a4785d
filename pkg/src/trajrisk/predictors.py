"""Trajectory predictors.

All predictors map a lookback window ``u`` (length ``L``) to a forecast of
length ``H``. Batch evaluation goes through ``predict(inputs, anchors)``
with ``inputs`` of shape ``(N, L)``; the single-window helpers
(:func:`flat_forecast`, :func:`nn_forecast`, ...) are thin wrappers.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DegenerateDesignError, InsufficientDataError, InvalidInputError
from .sim import ProcessModel


def _window(window):
    w = np.asarray(window, dtype=np.float64)
    if w.ndim != 1 or w.size == 0:
        raise InvalidInputError("window must be a non-empty 1-d sequence")
    return w


def _batch(inputs):
    x = np.asarray(inputs, dtype=np.float64)
    if x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2 or x.shape[1] == 0:
        raise InvalidInputError("inputs must have shape (N, L) with L >= 1")
    return x


def _check_horizon(H):
    if int(H) != H or H < 1:
        raise InvalidInputError(f"horizon must be an integer >= 1, got {H!r}")
    return int(H)


@dataclass(frozen=True)
class FlatPredictor:
    """Repeat the last observed value: the Bayes forecast for martingale prices."""

    H: int
    label: str = "flat"

    def predict(self, inputs, anchors=None):
        x = _batch(inputs)
        return np.repeat(x[:, -1:], self.H, axis=1)

    def to_dict(self):
        return {"kind": "flat", "H": self.H}


@dataclass(frozen=True)
class ZeroPredictor:
    """All-zero forecast: the Bayes forecast for martingale returns."""

    H: int
    label: str = "zero"

    def predict(self, inputs, anchors=None):
        return np.zeros((len(_batch(inputs)), self.H))

    def to_dict(self):
        return {"kind": "zero", "H": self.H}


@dataclass(frozen=True)
class LinearOneParam:
    """``u -> a * x(u) * (1, ..., 1)`` where ``x(u)`` is the last coordinate of ``u``."""

    a: float
    H: int
    L: int | None = None
    label: str = "linear"

    def __post_init__(self):
        if not math.isfinite(self.a):
            raise InvalidInputError("coefficient must be finite")
        _check_horizon(self.H)

    def predict(self, inputs, anchors=None):
        x = _batch(inputs)
        return np.repeat(self.a * x[:, -1:], self.H, axis=1)

    def to_dict(self):
        return {"kind": "linear", "a": self.a, "H": self.H, "L": self.L}


def fit_linear_one_param(train):
    """Closed-form least squares for the one-parameter class.

    ``a_hat = sum_i x_i * sum_h Y_ih / (H * sum_i x_i**2)``.

    Raises
    ------
    DegenerateDesignError
        When every ``x_i`` is zero.
    """
    if len(train) == 0:
        raise InsufficientDataError("cannot fit on an empty dataset")
    x = train.inputs[:, -1]
    H = train.targets.shape[1]
    v = float(np.dot(x, x))
    if v == 0.0:
        raise DegenerateDesignError("sum of squared regressors is zero")
    num = float(np.dot(x, train.targets.sum(axis=1)))
    return LinearOneParam(a=num / (H * v), H=H, L=train.inputs.shape[1])


def _nearest(train_inputs, queries, k, chunk_elems=1 << 22):
    """Indices of the ``k`` nearest training rows for every query.

    Exact brute-force scan. Distances are sums of squared coordinate
    differences; ties go to the smaller training position, and for
    ``k = 1`` an exactly equal training row always wins.
    """
    n, L = train_inputs.shape
    out = np.empty((len(queries), k), dtype=np.int64)
    step = max(1, chunk_elems // max(1, n * L))
    for s in range(0, len(queries), step):
        q = queries[s : s + step]
        d = ((q[:, None, :] - train_inputs[None, :, :]) ** 2).sum(axis=2)
        if k == 1:
            best = np.argmin(d, axis=1)
            # distances can underflow to 0 for distinct rows; prefer exact matches
            for j in np.flatnonzero(d[np.arange(len(q)), best] == 0):
                same = np.flatnonzero(np.all(train_inputs == q[j], axis=1))
                if same.size:
                    best[j] = same[0]
            out[s : s + step, 0] = best
        else:
            out[s : s + step] = np.argsort(d, axis=1, kind="stable")[:, :k]
    return out


@dataclass(frozen=True)
class NNIndex:
    """k-nearest-neighbour regressor over stored training pairs.

    ``k = 1`` interpolates: querying a training input returns its target.
    """

    inputs: np.ndarray
    targets: np.ndarray
    k: int = 1
    label: str = "nn"

    def __post_init__(self):
        x = np.array(self.inputs, dtype=np.float64)
        y = np.array(self.targets, dtype=np.float64)
        if x.ndim != 2 or y.ndim != 2 or len(x) != len(y) or len(x) == 0:
            raise InvalidInputError("NNIndex needs matching non-empty (n, L) and (n, H) arrays")
        if not 1 <= self.k <= len(x):
            raise InvalidInputError(f"k must be in [1, {len(x)}]")
        x.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "inputs", x)
        object.__setattr__(self, "targets", y)

    @classmethod
    def from_dataset(cls, train, k=1, label=None):
        return cls(train.inputs, train.targets, k=k, label=label or ("nn" if k == 1 else f"knn{k}"))

    @property
    def H(self):
        return self.targets.shape[1]

    def neighbors(self, inputs):
        q = _batch(inputs)
        if q.shape[1] != self.inputs.shape[1]:
            raise InvalidInputError(
                f"query length {q.shape[1]} does not match index length {self.inputs.shape[1]}"
            )
        return _nearest(self.inputs, q, self.k)

    def predict(self, inputs, anchors=None):
        idx = self.neighbors(inputs)
        if self.k == 1:
            return self.targets[idx[:, 0]]
        return self.targets[idx].mean(axis=1)

    def to_dict(self, dataset_ref=None):
        return {
            "kind": "nn",
            "k": self.k,
            "L": self.inputs.shape[1],
            "H": self.H,
            "dataset": dataset_ref,
        }


ORACLE_MODES = ("flat_martingale", "structured_mean")


@dataclass(frozen=True)
class OracleSpec:
    """Analytic conditional mean of the simulated process."""

    model: ProcessModel
    mode: str
    H: int = 1
    label: str = "oracle"

    def __post_init__(self):
        if self.mode not in ORACLE_MODES:
            raise ConfigError(f"unknown oracle mode {self.mode!r}")
        if self.mode == "structured_mean" and self.model.structure_params is None:
            raise ConfigError("structured_mean oracle needs a structured model")
        if self.mode == "flat_martingale" and not self.model.is_martingale:
            raise ConfigError("flat_martingale oracle needs a martingale model")

    def predict(self, inputs, anchors=None):
        x = _batch(inputs)
        if self.mode == "flat_martingale":
            return np.repeat(x[:, -1:], self.H, axis=1)
        if anchors is None:
            raise InvalidInputError("structured oracle needs window anchors")
        t = np.asarray(anchors, dtype=np.float64)[:, None] + np.arange(1, self.H + 1)
        return self.model.structure_mean(t)

    def to_dict(self):
        return {"kind": "oracle", "mode": self.mode, "H": self.H, "model": self.model.to_dict()}


def flat_forecast(window, H):
    return FlatPredictor(_check_horizon(H)).predict(_window(window)[None, :])[0]


def zero_forecast(H):
    return np.zeros(_check_horizon(H))


def linear_forecast(model, window):
    return model.predict(_window(window)[None, :])[0]


def nn_forecast(index, window):
    return index.predict(_window(window)[None, :])[0]


def oracle_forecast(spec, t, window, H, model=None):
    """Conditional-mean forecast at anchor ``t``.

    ``model``, when given, is the model that generated the evaluated path;
    it must equal ``spec.model``.
    """
    if model is not None and model != spec.model:
        raise ConfigError("oracle spec does not match the generating model")
    spec = OracleSpec(spec.model, spec.mode, _check_horizon(H))
    return spec.predict(_window(window)[None, :], anchors=[t])[0]


def predictor_from_dict(d, train=None):
    """Rebuild a predictor from :meth:`to_dict` output.

    NN indices need their training dataset passed as ``train``.
    """
    kind = d.get("kind")
    if kind == "flat":
        return FlatPredictor(d["H"])
    if kind == "zero":
        return ZeroPredictor(d["H"])
    if kind == "linear":
        return LinearOneParam(a=float(d["a"]), H=d["H"], L=d.get("L"))
    if kind == "nn":
        if train is None:
            raise ConfigError("nn predictor needs its training dataset")
        return NNIndex.from_dataset(train, k=d.get("k", 1))
    if kind == "oracle":
        return OracleSpec(ProcessModel.from_dict(d["model"]), d["mode"], d["H"])
    raise ConfigError(f"unknown predictor kind {kind!r}")


def dumps_predictor(pred, **extra):
    return json.dumps({**pred.to_dict(**extra)}, sort_keys=True)
