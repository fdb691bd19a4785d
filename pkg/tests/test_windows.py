import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trajrisk.errors import ConfigError, InsufficientDataError
from trajrisk.windows import (
    chrono_split,
    concat,
    dataset_from_csv,
    dataset_to_csv,
    make_windows,
    windows_from_sessions,
)


def test_pair_count_formula():
    assert len(make_windows(np.arange(10.0), L=3, H=2, stride=1)) == 6


def test_first_pair():
    ds = make_windows([0.0, 1.0, 2.0, 3.0, 4.0], L=2, H=1)
    pair = ds.pairs[0]
    assert pair.t == 1
    assert pair.input.tolist() == [0.0, 1.0]
    assert pair.target.tolist() == [2.0]


def test_one_window_per_session():
    sessions = [np.full(40, float(i)) for i in range(1159)]
    ds = windows_from_sessions(sessions, L=25, H=10)
    assert len(ds) == 1159
    assert np.all(np.diff(ds.anchors) > 0)
    assert ds.inputs[3].tolist() == [3.0] * 25


def test_paper_split_sizes():
    ds = windows_from_sessions([np.zeros(5)] * 1159, L=3, H=2)
    split = chrono_split(ds, (0.70, 0.10, 0.20))
    assert (len(split.train), len(split.val), len(split.test)) == (811, 115, 233)


def test_small_split_sizes():
    ds = make_windows(np.arange(11.0), L=1, H=1)
    split = chrono_split(ds, (0.70, 0.10, 0.20))
    assert (len(split.train), len(split.val), len(split.test)) == (7, 1, 2)


@pytest.mark.parametrize("fractions", [(1.0, 0.0, 0.0), (0.5, 0.3, 0.3), (0.5, 0.5), (-0.1, 0.6, 0.5)])
def test_bad_fractions(fractions):
    ds = make_windows(np.arange(11.0), L=1, H=1)
    with pytest.raises(ConfigError):
        chrono_split(ds, fractions)


def test_empty_dataset_split():
    ds = make_windows(np.arange(11.0), L=1, H=1).subset(0, 0)
    with pytest.raises(InsufficientDataError):
        chrono_split(ds)


def test_too_short():
    with pytest.raises(InsufficientDataError):
        make_windows(np.arange(4.0), L=3, H=2)
    with pytest.raises(ConfigError):
        make_windows(np.arange(4.0), L=0, H=2)


@given(
    T=st.integers(2, 120),
    L=st.integers(1, 20),
    H=st.integers(1, 20),
    stride=st.integers(1, 10),
    f=st.tuples(st.floats(0.05, 1), st.floats(0.05, 1), st.floats(0.05, 1)),
)
@settings(max_examples=150, deadline=None)
def test_window_and_split_properties(T, L, H, stride, f):
    x = np.random.default_rng(T).standard_normal(T)
    if T < L + H:
        with pytest.raises(InsufficientDataError):
            make_windows(x, L, H, stride)
        return
    ds = make_windows(x, L, H, stride)
    # fidelity: input || target is the contiguous path slice
    for p in ds.pairs:
        assert np.array_equal(np.concatenate([p.input, p.target]), x[p.t - L + 1 : p.t + H + 1])
        assert p.input[-1] == x[p.t]
    if stride == 1:
        assert len(ds) == T - L - H + 1
    assert len(make_windows(x, L, H, stride + 1)) <= len(ds)

    total = sum(f)
    fr = (f[0] / total, f[1] / total, 1 - f[0] / total - f[1] / total)
    if fr[2] <= 0:
        return
    sp = chrono_split(ds, fr)
    assert len(sp.train) + len(sp.val) + len(sp.test) == len(ds)
    joined = np.concatenate([sp.train.anchors, sp.val.anchors, sp.test.anchors])
    assert np.array_equal(joined, ds.anchors)


def test_concat_and_csv_round_trip(tmp_path):
    a = make_windows(np.arange(20.0), L=3, H=2, stride=2)
    b = make_windows(np.arange(100.0, 120.0), L=3, H=2, stride=2)
    b = type(b)(b.anchors + 100, b.inputs, b.targets)
    both = concat(a, b)
    assert len(both) == len(a) + len(b)
    text = dataset_to_csv(both, tmp_path / "w.csv")
    assert text.splitlines()[0] == "t,input_0,input_1,input_2,target_0,target_1"
    back = dataset_from_csv(tmp_path / "w.csv")
    assert np.array_equal(back.inputs, both.inputs) and np.array_equal(back.anchors, both.anchors)
