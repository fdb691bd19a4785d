import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from trajrisk.errors import InsufficientDataError, InvalidInputError
from trajrisk.predictors import FlatPredictor, NNIndex
from trajrisk.risk import (
    MCEstimate,
    compare_report,
    ecdf,
    empirical_risk,
    traj_loss,
    trajectory_losses,
    wilson_lower,
)
from trajrisk.windows import Dataset

losses_st = arrays(np.float64, st.integers(1, 60), elements=st.floats(0, 100))


def test_traj_loss_examples():
    assert traj_loss([1, 2], [1, 2]) == 0.0
    assert traj_loss([1, 2], [0, 0]) == 5.0
    with pytest.raises(InvalidInputError):
        traj_loss([1, 2, 3], [1, 2])


def test_ecdf_examples():
    v, f = ecdf([3.0, 1.0, 2.0])
    assert v.tolist() == [1.0, 2.0, 3.0]
    assert f.tolist() == pytest.approx([1 / 3, 2 / 3, 1.0])
    v, f = ecdf([0.0, 0.0, 0.0])
    assert v.tolist() == [0.0] and f.tolist() == [1.0]
    with pytest.raises(InsufficientDataError):
        ecdf([])


@given(losses_st, st.randoms())
def test_ecdf_properties(x, rnd):
    v, f = ecdf(x)
    assert np.all(np.diff(v) > 0)
    assert np.all(np.diff(f) > 0) and f[-1] == 1.0 and f[0] > 0
    perm = list(x)
    rnd.shuffle(perm)
    v2, f2 = ecdf(perm)
    assert np.array_equal(v, v2) and np.array_equal(f, f2)


def test_ecdf_dkw_band():
    # exponential losses: true CDF known in closed form
    rng = np.random.default_rng(5)
    N = 10_000
    v, f = ecdf(rng.exponential(size=N))
    true = 1 - np.exp(-v)
    f_left = np.concatenate([[0.0], f[:-1]])
    sup = max(np.max(np.abs(f - true)), np.max(np.abs(f_left - true)))
    assert sup <= math.sqrt(math.log(2 / 0.01) / (2 * N))


def test_report_identical_predictors():
    x = np.array([0.0, 1.0, 2.0, 3.0])
    r = compare_report(x, x.copy())
    assert r.win_rate_A_over_B == 0.0 and r.win_rate_B_over_A == 0.0
    assert r.tie_fraction == 1.0 and r.risk_ratio_A_over_B == 1.0
    assert r.zero_loss_pairs == 1
    assert np.all(r.log10_ratios == 0.0)


def test_report_all_zero():
    r = compare_report([0.0, 0.0], [0.0, 0.0])
    assert r.risk_ratio_A_over_B == 1.0 and r.log10_ratios.size == 0 and r.zero_loss_pairs == 2


def test_report_input_errors():
    with pytest.raises(InvalidInputError):
        compare_report([1.0, 2.0], [1.0])
    with pytest.raises(InvalidInputError):
        compare_report([-1.0], [1.0])
    with pytest.raises(InsufficientDataError):
        compare_report([], [])


@given(
    st.integers(1, 50).flatmap(
        lambda n: st.tuples(
            arrays(np.float64, n, elements=st.floats(0, 100, allow_subnormal=False)),
            arrays(np.float64, n, elements=st.floats(0, 100, allow_subnormal=False)),
        )
    )
)
@settings(max_examples=150)
def test_report_invariants(pair):
    la, lb = pair
    r = compare_report(la, lb)
    assert r.win_rate_A_over_B + r.win_rate_B_over_A + r.tie_fraction == pytest.approx(1.0)
    s = compare_report(lb, la)
    assert s.win_rate_A_over_B == r.win_rate_B_over_A
    if la.mean() > 0 and lb.mean() > 0:
        assert r.risk_ratio_A_over_B * s.risk_ratio_A_over_B == pytest.approx(1.0)
    assert np.allclose(s.log10_ratios, -r.log10_ratios)
    assert r.log10_ratios.size + r.zero_loss_pairs == la.size


@given(losses_st, losses_st)
def test_risk_is_linear_under_concatenation(a, b):
    ra, rb = MCEstimate.from_samples(a).mean, MCEstimate.from_samples(b).mean
    both = MCEstimate.from_samples(np.concatenate([a, b])).mean
    assert both == pytest.approx((a.size * ra + b.size * rb) / (a.size + b.size), rel=1e-12, abs=1e-12)


def test_empirical_risk_matches_loop():
    rng = np.random.default_rng(2)
    ds = Dataset(np.arange(30), rng.normal(size=(30, 4)), rng.normal(size=(30, 3)))
    ref = math.fsum(traj_loss(y, [x[-1]] * 3) for x, y in zip(ds.inputs, ds.targets)) / 30
    assert empirical_risk(FlatPredictor(3), ds) == pytest.approx(ref, rel=1e-12)


def test_wilson_lower():
    assert wilson_lower(0, 0) == 0.0
    assert 0.9 < wilson_lower(990, 1000) < 0.99
    assert wilson_lower(50, 100) < 0.5


def test_nn_flat_ratio_against_oracle():
    """NN / flat risk ratio on martingale windows matches a direct computation."""
    rng = np.random.default_rng(11)
    sigma, H, n, m = 0.1, 5, 300, 20_000

    def sample(k):
        x = rng.uniform(0.5, 1.5, size=k)
        return x, x[:, None] + sigma * rng.standard_normal((k, H))

    xtr, ytr = sample(n)
    xte, yte = sample(m)
    train = Dataset(np.arange(n), xtr[:, None], ytr)
    test = Dataset(np.arange(m), xte[:, None], yte)
    nn = trajectory_losses(NNIndex.from_dataset(train), test)
    flat = trajectory_losses(FlatPredictor(H), test)
    r = compare_report(nn, flat, ("nn", "flat"))
    sorted_x = np.sort(xtr)
    pos = np.clip(np.searchsorted(sorted_x, xte), 1, n - 1)
    gap = np.minimum(np.abs(xte - sorted_x[pos - 1]), np.abs(xte - sorted_x[pos]))
    oracle = (2 * H * sigma**2 + H * np.mean(gap**2)) / (H * sigma**2)
    assert r.risk_ratio_A_over_B == pytest.approx(oracle, rel=0.15)
