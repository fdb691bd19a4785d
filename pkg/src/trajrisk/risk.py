"""Trajectory losses, empirical risks and pairwise comparison statistics."""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InsufficientDataError, InvalidInputError


@dataclass(frozen=True)
class MCEstimate:
    """Monte-Carlo mean with its standard error ``sd / sqrt(n)``."""

    mean: float
    se: float
    n: int

    @classmethod
    def from_samples(cls, samples):
        s = np.asarray(samples, dtype=np.float64).ravel()
        if s.size == 0:
            raise InsufficientDataError("no samples")
        se = float(s.std(ddof=1) / math.sqrt(s.size)) if s.size > 1 else 0.0
        return cls(float(s.mean()), se, int(s.size))

    def to_dict(self):
        return {"mean": self.mean, "se": self.se, "n": self.n}


def traj_loss(target, forecast):
    """Squared Euclidean distance between a target trajectory and its forecast."""
    y = np.asarray(target, dtype=np.float64)
    f = np.asarray(forecast, dtype=np.float64)
    if y.shape != f.shape or y.ndim != 1:
        raise InvalidInputError(f"shape mismatch: target {y.shape} vs forecast {f.shape}")
    d = y - f
    return float(np.dot(d, d))


def trajectory_losses(predictor, dataset):
    """Per-window losses of ``predictor`` on every pair of ``dataset``."""
    if len(dataset) == 0:
        raise InsufficientDataError("empty dataset")
    f = predictor.predict(dataset.inputs, dataset.anchors)
    if f.shape != dataset.targets.shape:
        raise InvalidInputError(f"forecast shape {f.shape} != target shape {dataset.targets.shape}")
    d = dataset.targets - f
    return np.einsum("ij,ij->i", d, d)


def empirical_risk(predictor, dataset):
    """Mean trajectory loss over ``dataset``."""
    return float(trajectory_losses(predictor, dataset).mean())


def ecdf(losses):
    """Right-continuous ECDF as ``(values, fractions)`` at the sorted unique losses."""
    x = np.asarray(losses, dtype=np.float64).ravel()
    if x.size == 0:
        raise InsufficientDataError("ECDF of an empty sample")
    if not np.all(np.isfinite(x)):
        raise InvalidInputError("losses must be finite")
    values, counts = np.unique(x, return_counts=True)
    frac = np.cumsum(counts) / x.size
    frac[-1] = 1.0
    return values, frac


def wilson_lower(successes, n, z=2.3263478740408408):
    """Lower Wilson score bound for a binomial proportion (default one-sided 99%)."""
    if n == 0:
        return 0.0
    p = successes / n
    denom = 1 + z * z / n
    centre = p + z * z / (2 * n)
    half = z * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n))
    return (centre - half) / denom


@dataclass
class RiskReport:
    labels: tuple
    N: int
    mean_risk: dict
    risk_se: dict
    ecdf: dict
    log10_ratios: np.ndarray
    zero_loss_pairs: int
    win_rate_A_over_B: float
    win_rate_B_over_A: float
    tie_fraction: float
    risk_ratio_A_over_B: float
    ratio_anchors: np.ndarray | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self):
        a, b = self.labels
        return {
            "labels": {"A": a, "B": b},
            "N": self.N,
            "mean_risk": self.mean_risk,
            "risk_se": self.risk_se,
            "risk_ratio_A_over_B": self.risk_ratio_A_over_B,
            "win_rate_A_over_B": self.win_rate_A_over_B,
            "win_rate_B_over_A": self.win_rate_B_over_A,
            "tie_fraction": self.tie_fraction,
            "log10_ratio": {
                "count": int(self.log10_ratios.size),
                "excluded_zero_loss_pairs": self.zero_loss_pairs,
                "mean": float(self.log10_ratios.mean()) if self.log10_ratios.size else None,
                "median": float(np.median(self.log10_ratios)) if self.log10_ratios.size else None,
                "fraction_positive": (
                    float((self.log10_ratios > 0).mean()) if self.log10_ratios.size else None
                ),
            },
            **self.extra,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def _ratio(num, den):
    if den > 0:
        return num / den
    return 1.0 if num == 0 else math.inf


def compare_report(losses_a, losses_b, labels=("A", "B"), more_losses=None, anchors=None):
    """Compare two predictors window by window.

    Parameters
    ----------
    losses_a, losses_b : array-like
        Per-window trajectory losses of predictors A and B, aligned.
    labels : tuple of str
        Names of A and B.
    more_losses : dict, optional
        Losses of further predictors; they get mean risks and ECDFs but do
        not enter the pairwise statistics.
    anchors : array-like, optional
        Window anchors; those of the windows entering the log-ratios are
        kept as ``ratio_anchors`` (default: window positions).

    Notes
    -----
    Windows where either loss is exactly zero are dropped from the
    log-ratios only (their number is reported); the win rate uses a strict
    inequality.
    """
    la = np.asarray(losses_a, dtype=np.float64).ravel()
    lb = np.asarray(losses_b, dtype=np.float64).ravel()
    if la.shape != lb.shape:
        raise InvalidInputError(f"loss vectors differ in length: {la.size} vs {lb.size}")
    if la.size == 0:
        raise InsufficientDataError("no windows to compare")
    if np.any(la < 0) or np.any(lb < 0) or not (np.all(np.isfinite(la)) and np.all(np.isfinite(lb))):
        raise InvalidInputError("losses must be finite and non-negative")
    a, b = labels
    all_losses = {a: la, b: lb}
    for k, v in (more_losses or {}).items():
        v = np.asarray(v, dtype=np.float64).ravel()
        if v.shape != la.shape:
            raise InvalidInputError(f"losses for {k!r} have the wrong length")
        all_losses[k] = v

    est = {k: MCEstimate.from_samples(v) for k, v in all_losses.items()}
    positive = (la > 0) & (lb > 0)
    ratios = np.log10(la[positive]) - np.log10(lb[positive])
    n = la.size
    mean_b = est[b].mean
    return RiskReport(
        labels=(a, b),
        N=int(n),
        mean_risk={k: e.mean for k, e in est.items()},
        risk_se={k: e.se for k, e in est.items()},
        ecdf={k: ecdf(v) for k, v in all_losses.items()},
        log10_ratios=ratios,
        zero_loss_pairs=int(n - positive.sum()),
        win_rate_A_over_B=float(np.count_nonzero(la > lb) / n),
        win_rate_B_over_A=float(np.count_nonzero(lb > la) / n),
        tie_fraction=float(np.count_nonzero(la == lb) / n),
        risk_ratio_A_over_B=_ratio(est[a].mean, mean_b),
        ratio_anchors=(np.arange(n) if anchors is None else np.asarray(anchors))[positive],
    )
