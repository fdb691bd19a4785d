"""Lookback/horizon window pairs and chronological splits."""

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path as FsPath

import numpy as np

from .errors import ConfigError, InsufficientDataError


@dataclass(frozen=True)
class WindowPair:
    t: int
    input: np.ndarray
    target: np.ndarray


def _readonly(a, ndim):
    a = np.array(a, dtype=np.float64 if ndim == 2 else np.int64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Dataset:
    """Window pairs stored column-wise.

    ``inputs[i]`` is the lookback window whose last coordinate is the path
    value at ``anchors[i]``; ``targets[i]`` holds the next ``H`` values.
    """

    anchors: np.ndarray
    inputs: np.ndarray
    targets: np.ndarray
    stride: int = 1

    def __post_init__(self):
        anchors = _readonly(self.anchors, 1)
        inputs = _readonly(self.inputs, 2)
        targets = _readonly(self.targets, 2)
        if inputs.ndim != 2 or targets.ndim != 2:
            raise ConfigError("inputs and targets must be 2-d arrays")
        if not (len(anchors) == len(inputs) == len(targets)):
            raise ConfigError("anchors, inputs and targets must have equal length")
        if len(anchors) > 1 and np.any(np.diff(anchors) <= 0):
            raise ConfigError("anchors must be strictly increasing")
        if self.stride < 1:
            raise ConfigError("stride must be >= 1")
        object.__setattr__(self, "anchors", anchors)
        object.__setattr__(self, "inputs", inputs)
        object.__setattr__(self, "targets", targets)

    @property
    def L(self):
        return self.inputs.shape[1]

    @property
    def H(self):
        return self.targets.shape[1]

    def __len__(self):
        return len(self.anchors)

    @property
    def pairs(self):
        return [WindowPair(int(t), x, y) for t, x, y in zip(self.anchors, self.inputs, self.targets)]

    @property
    def last_values(self):
        """``x(u)`` for every stored input: its final coordinate."""
        return self.inputs[:, -1]

    def subset(self, start, stop):
        return Dataset(
            self.anchors[start:stop], self.inputs[start:stop], self.targets[start:stop], self.stride
        )


@dataclass(frozen=True)
class SplitDataset:
    train: Dataset
    val: Dataset
    test: Dataset
    fractions: tuple


def _values(path):
    return np.asarray(getattr(path, "values", path), dtype=np.float64)


def make_windows(path, L, H, stride=1):
    """Slide a ``(L, H)`` window along ``path``.

    Anchors run ``L - 1, L - 1 + stride, ...`` while ``t + H`` stays inside
    the path, so stride 1 yields ``T - L - H + 1`` pairs.
    """
    if min(L, H, stride) < 1:
        raise ConfigError("L, H and stride must all be >= 1")
    x = _values(path)
    T = len(x)
    if T < L + H:
        raise InsufficientDataError(f"path of length {T} is shorter than L + H = {L + H}")
    anchors = np.arange(L - 1, T - H, stride)
    inputs = np.lib.stride_tricks.sliding_window_view(x, L)[anchors - L + 1]
    targets = np.lib.stride_tricks.sliding_window_view(x, H)[anchors + 1]
    return Dataset(anchors, inputs, targets, stride)


def windows_from_sessions(sessions, L, H):
    """One window per session, anchored at index ``L - 1`` of each session.

    Anchors are made globally increasing by offsetting each session by the
    cumulative length of the sessions before it.
    """
    anchors, inputs, targets = [], [], []
    offset = 0
    for s in sessions:
        x = _values(s)
        if len(x) < L + H:
            raise InsufficientDataError(f"session of length {len(x)} is shorter than L + H")
        anchors.append(offset + L - 1)
        inputs.append(x[:L])
        targets.append(x[L : L + H])
        offset += len(x)
    if not anchors:
        raise InsufficientDataError("no sessions to window")
    return Dataset(np.array(anchors), np.array(inputs), np.array(targets), stride=1)


def concat(first, second):
    """Join two datasets whose anchors are already in chronological order."""
    if (first.L, first.H) != (second.L, second.H):
        raise ConfigError("cannot concatenate datasets with different (L, H)")
    return Dataset(
        np.concatenate([first.anchors, second.anchors]),
        np.concatenate([first.inputs, second.inputs]),
        np.concatenate([first.targets, second.targets]),
        first.stride,
    )


def chrono_split(dataset, fractions=(0.70, 0.10, 0.20)):
    """Split without shuffling: train sizes ``floor(f * N)``, remainder to test."""
    fractions = tuple(float(f) for f in fractions)
    if len(fractions) != 3 or any(not f > 0 for f in fractions):
        raise ConfigError(f"fractions must be three positive numbers, got {fractions}")
    if abs(sum(fractions) - 1.0) > 1e-9:
        raise ConfigError(f"fractions must sum to 1, got {sum(fractions)!r}")
    N = len(dataset)
    if N == 0:
        raise InsufficientDataError("cannot split an empty dataset")
    # Guard against 0.7 * 1159 landing a hair below an integer.
    n_train = math.floor(fractions[0] * N + 1e-9)
    n_val = math.floor(fractions[1] * N + 1e-9)
    return SplitDataset(
        train=dataset.subset(0, n_train),
        val=dataset.subset(n_train, n_train + n_val),
        test=dataset.subset(n_train + n_val, N),
        fractions=fractions,
    )


def dataset_to_csv(dataset, dest=None):
    """Serialize as ``t, input_0..input_{L-1}, target_0..target_{H-1}`` rows.

    Returns the CSV text and also writes it when ``dest`` is given.
    """
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t"] + [f"input_{i}" for i in range(dataset.L)] + [f"target_{h}" for h in range(dataset.H)])
    for t, x, y in zip(dataset.anchors, dataset.inputs, dataset.targets):
        w.writerow([int(t)] + [repr(float(v)) for v in x] + [repr(float(v)) for v in y])
    text = buf.getvalue()
    if dest is not None:
        FsPath(dest).write_text(text)
    return text


def dataset_from_csv(src):
    rows = list(csv.reader(FsPath(src).read_text().splitlines()))
    if len(rows) < 2:
        raise InsufficientDataError(f"{src}: no window rows")
    header = rows[0]
    L = sum(h.startswith("input_") for h in header)
    body = np.array([[float(v) for v in r] for r in rows[1:]])
    return Dataset(body[:, 0].astype(np.int64), body[:, 1 : 1 + L], body[:, 1 + L :])
