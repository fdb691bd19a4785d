import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from trajrisk.errors import ConfigError, DegenerateDesignError, InvalidInputError
from trajrisk.predictors import (
    FlatPredictor,
    LinearOneParam,
    NNIndex,
    OracleSpec,
    dumps_predictor,
    fit_linear_one_param,
    flat_forecast,
    linear_forecast,
    nn_forecast,
    oracle_forecast,
    predictor_from_dict,
    zero_forecast,
)
from trajrisk.risk import empirical_risk, trajectory_losses
from trajrisk.sim import ProcessModel, StructureParams, simulate_path
from trajrisk.windows import Dataset, make_windows


def _ds(inputs, targets):
    return Dataset(np.arange(len(inputs)), inputs, targets)


def brute_nn(train_inputs, query):
    best, best_d = None, math.inf
    for i, row in enumerate(train_inputs):
        d = sum((a - b) ** 2 for a, b in zip(row, query))
        if d < best_d:
            best, best_d = i, d
    return best


def closed_form(xs, ys):
    H = len(ys[0])
    num = math.fsum(x * math.fsum(y) for x, y in zip(xs, ys))
    return num / (H * math.fsum(x * x for x in xs))


def test_flat_forecast():
    assert flat_forecast([1, 2, 3], 2).tolist() == [3, 3]
    assert flat_forecast([5], 4).tolist() == [5, 5, 5, 5]
    with pytest.raises(InvalidInputError):
        flat_forecast([], 3)


def test_flat_is_exact_on_constant_path():
    p = simulate_path(ProcessModel("gaussian_random_walk", x0=3.0, sigma=0.0), 200, 0)
    ds = make_windows(p, 10, 5)
    assert np.all(trajectory_losses(FlatPredictor(5), ds) == 0)


def test_zero_forecast():
    assert zero_forecast(3).tolist() == [0, 0, 0]
    with pytest.raises(InvalidInputError):
        zero_forecast(0)


def test_fit_noiseless_recovers_one():
    x = np.array([0.3, -1.2, 2.0, 5.5])
    ds = _ds(np.c_[np.ones(4), x], np.repeat(x[:, None], 4, axis=1))
    assert fit_linear_one_param(ds).a == 1.0


def test_fit_single_pair_by_hand():
    # 2 * (3 + 5) / (2 * 2**2) = 2
    assert fit_linear_one_param(_ds([[2.0]], [[3.0, 5.0]])).a == 2.0


def test_fit_degenerate():
    with pytest.raises(DegenerateDesignError):
        fit_linear_one_param(_ds([[1.0, 0.0], [2.0, 0.0]], [[1.0], [2.0]]))


@given(
    x=arrays(np.float64, 12, elements=st.floats(-50, 50)).filter(lambda v: np.dot(v, v) > 1e-6),
    noise=arrays(np.float64, (12, 3), elements=st.floats(-5, 5)),
    lam=st.floats(0.01, 100).map(lambda v: v if v != 0 else 1.0),
)
@settings(max_examples=100, deadline=None)
def test_fit_scale_invariance_and_recovery(x, noise, lam):
    y = x[:, None] + noise
    a = fit_linear_one_param(_ds(x[:, None], y)).a
    a_scaled = fit_linear_one_param(_ds(lam * x[:, None], lam * y)).a
    assert a_scaled == pytest.approx(a, rel=1e-9, abs=1e-9)
    assert fit_linear_one_param(_ds(x[:, None], np.repeat(x[:, None], 3, 1))).a == pytest.approx(1.0, rel=1e-12)


def test_fit_matches_closed_form_oracle(rng):
    for _ in range(50):
        n, L, H = rng.integers(1, 40), rng.integers(1, 6), rng.integers(1, 8)
        X = rng.normal(size=(n, L))
        Y = rng.normal(size=(n, H))
        a = fit_linear_one_param(_ds(X, Y)).a
        ref = closed_form(X[:, -1].tolist(), Y.tolist())
        assert abs(a - ref) <= 1e-12 * abs(ref) + 1e-300


def test_linear_forecast():
    assert linear_forecast(LinearOneParam(1.0, 3), [9, 4]).tolist() == [4, 4, 4]
    assert linear_forecast(LinearOneParam(0.0, 2), [7.0]).tolist() == [0, 0]
    assert linear_forecast(LinearOneParam(2.0, 2), [0, 1.5]).tolist() == [3.0, 3.0]
    with pytest.raises(InvalidInputError):
        LinearOneParam(math.nan, 2)


@given(w=arrays(np.float64, st.integers(1, 10), elements=st.floats(-1e6, 1e6)), H=st.integers(1, 10))
def test_linear_with_unit_coefficient_is_flat(w, H):
    assert np.array_equal(linear_forecast(LinearOneParam(1.0, H), w), flat_forecast(w, H))


def test_nn_examples():
    idx = NNIndex([[0.0, 0.0], [2.0, 2.0]], [[1.0], [9.0]])
    assert brute_nn(idx.inputs, [0.4, 0.4]) == 0
    assert nn_forecast(idx, [0.4, 0.4]).tolist() == [1.0]
    dup = NNIndex([[1.0, 1.0], [1.0, 1.0], [3.0, 0.0]], [[5.0], [7.0], [0.0]])
    assert nn_forecast(dup, [1.0, 1.0]).tolist() == [5.0]
    with pytest.raises(InvalidInputError):
        nn_forecast(idx, [1.0, 2.0, 3.0])


@given(data=arrays(np.float64, (15, 3), elements=st.floats(-10, 10)))
@settings(max_examples=100)
def test_nn_interpolates_training_pairs(data):
    targets = np.arange(30.0).reshape(15, 2)
    idx = NNIndex(data, targets)
    preds = idx.predict(data)
    for i in range(15):
        first = next(j for j in range(15) if np.array_equal(data[j], data[i]))
        assert np.array_equal(preds[i], targets[first])


def test_nn_matches_brute_force(rng):
    X = rng.normal(size=(60, 4))
    Y = rng.normal(size=(60, 2))
    Q = rng.normal(size=(300, 4))
    idx = NNIndex(X, Y)
    got = idx.neighbors(Q)[:, 0]
    assert got.tolist() == [brute_nn(X.tolist(), q) for q in Q.tolist()]


def test_knn_average():
    idx = NNIndex([[0.0], [1.0], [10.0]], [[0.0], [2.0], [100.0]], k=2)
    assert nn_forecast(idx, [0.2]).tolist() == [1.0]
    with pytest.raises(InvalidInputError):
        NNIndex([[0.0]], [[0.0]], k=2)


def test_oracle_flat_matches_flat(rw_model):
    spec = OracleSpec(rw_model, "flat_martingale", 4)
    p = simulate_path(rw_model, 300, 1)
    ds = make_windows(p, 7, 4)
    assert np.array_equal(spec.predict(ds.inputs, ds.anchors), FlatPredictor(4).predict(ds.inputs))


def test_oracle_pure_trend():
    model = ProcessModel("structured_seasonal", x0=0.0, sigma=0.0, structure_params=StructureParams(0.0, 1, 1.0))
    assert oracle_forecast(OracleSpec(model, "structured_mean"), 7, [5.0, 6.0, 7.0], 2).tolist() == [8.0, 9.0]


def test_oracle_seasonal_noiseless_has_zero_loss():
    model = ProcessModel("structured_seasonal", x0=1.0, sigma=0.0, structure_params=StructureParams(2.0, 12, 0.05))
    ds = make_windows(simulate_path(model, 500, 0), 24, 6, stride=1)
    assert empirical_risk(OracleSpec(model, "structured_mean", 6), ds) == pytest.approx(0.0, abs=1e-20)


def test_oracle_mismatch(rw_model, seasonal_model):
    with pytest.raises(ConfigError):
        OracleSpec(rw_model, "structured_mean")
    with pytest.raises(ConfigError):
        OracleSpec(seasonal_model, "flat_martingale")
    with pytest.raises(ConfigError):
        oracle_forecast(OracleSpec(rw_model, "flat_martingale"), 3, [1.0], 2, model=seasonal_model)


def test_oracle_optimality_structured(seasonal_model):
    """Monte-Carlo risk of the oracle is lowest among all predictors (3 SE)."""
    from trajrisk.risk import MCEstimate

    p = simulate_path(seasonal_model, 60_000, seed=21)
    ds = make_windows(p, 24, 6, stride=5)
    assert len(ds) >= 10_000
    train = ds.subset(0, 2000)
    test = ds.subset(2000, len(ds))
    preds = {
        "oracle": OracleSpec(seasonal_model, "structured_mean", 6),
        "flat": FlatPredictor(6),
        "linear": fit_linear_one_param(train),
        "nn": NNIndex.from_dataset(train),
        "knn10": NNIndex.from_dataset(train, k=10),
    }
    losses = {k: trajectory_losses(v, test) for k, v in preds.items()}
    oracle = losses.pop("oracle")
    for name, l in losses.items():
        diff = MCEstimate.from_samples(l - oracle)
        assert diff.mean >= -3 * diff.se, name


def test_serialization_round_trip(rw_model):
    train = _ds([[1.0], [2.0]], [[1.0, 1.0], [2.0, 2.5]])
    for pred in (
        FlatPredictor(2),
        fit_linear_one_param(train),
        NNIndex.from_dataset(train),
        OracleSpec(rw_model, "flat_martingale", 2),
    ):
        import json

        extra = {"dataset_ref": "train.csv"} if isinstance(pred, NNIndex) else {}
        doc = json.loads(dumps_predictor(pred, **extra))
        back = predictor_from_dict(doc, train=train)
        q = np.array([[1.5], [3.0]])
        assert np.array_equal(back.predict(q, [0, 1]), pred.predict(q, [0, 1]))
