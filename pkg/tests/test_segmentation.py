import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from oracles import batch_fit, batch_sep, greedy_segments
from ts3c.dataset_io import TimeSeries
from ts3c.segmentation import (
    RunningFit,
    incremental_fit_update,
    segment_bounds,
    segment_series,
    sep,
)


def _fit(points, degree=1):
    state = RunningFit(degree)
    for y in points:
        state = incremental_fit_update(state, y)
    return state


@pytest.mark.parametrize(
    "ys, slope, intercept, sse",
    [
        ([0.0, 1.0, 2.0], 1.0, 0.0, 0.0),
        ([1.0, 1.0, 1.0], 0.0, 1.0, 0.0),
        ([0.0, 1.0, 0.0], 0.0, 1.0 / 3.0, 2.0 / 3.0),
    ],
)
def test_incremental_fit_examples(ys, slope, intercept, sse):
    state = _fit(ys)
    coef = state.coefficients()
    assert coef[1] == pytest.approx(slope, abs=1e-12)
    assert coef[0] == pytest.approx(intercept, abs=1e-12)
    assert state.sse() == pytest.approx(sse, abs=1e-12)
    # the hand values agree with a batch solve too
    bcoef, bsse = batch_fit(ys)
    assert np.allclose(bcoef, [intercept, slope], atol=1e-12)
    assert bsse == pytest.approx(sse, abs=1e-12)


def test_update_does_not_mutate_input():
    a = _fit([1.0, 2.0])
    b = incremental_fit_update(a, 5.0)
    assert a.n == 2 and b.n == 3


@pytest.mark.parametrize("n", [2, 7, 50])
def test_sep_constant_is_zero(n):
    assert sep(_fit([5.0] * n)) == 0.0


def test_sep_batch_oracle():
    assert sep(_fit([0.0, 0.0, 2.0])) == pytest.approx(batch_sep([0.0, 0.0, 2.0]), rel=1e-12)
    assert batch_sep([0.0, 0.0, 2.0]) == pytest.approx(math.sqrt(2 / 3) / (2 / 3), rel=1e-12)


def test_sep_zero_mean_is_clamped():
    # slope 0 by symmetry, residuals +-0.5, SSE 1, mean exactly 0
    state = _fit([0.5, -0.5, -0.5, 0.5])
    assert state.sse() == pytest.approx(1.0, rel=1e-12)
    assert sep(state) == pytest.approx(1e8, rel=1e-9)


@pytest.mark.parametrize("degree", [1, 2, 3])
def test_incremental_matches_batch_every_prefix(rng, degree):
    y = rng.normal(size=80) + rng.uniform(-3, 3)
    state = RunningFit(degree)
    for i, v in enumerate(y):
        state.push(v)
        if i + 1 < degree + 2:
            continue
        coef, sse = batch_fit(y[: i + 1], degree)
        assert np.allclose(state.coefficients(), coef, rtol=1e-7, atol=1e-9)
        assert state.sse() == pytest.approx(sse, rel=1e-7, abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(arrays(np.float64, st.integers(3, 120), elements=st.floats(-1e3, 1e3)))
def test_linear_incremental_matches_batch(y):
    state = RunningFit.from_values(y)
    coef, sse = batch_fit(y)
    scale = max(1.0, float(np.max(np.abs(y))))
    assert np.allclose(state.coefficients(), coef, rtol=1e-9, atol=1e-9 * scale)
    assert state.sse() == pytest.approx(sse, rel=1e-9, abs=1e-9 * scale**2 * len(y))


def test_linear_series_single_segment():
    y = 3.0 + 0.5 * np.arange(200)
    for sep_max in (1e-6, 10.0, 100.0):
        seg = segment_series(TimeSeries(0, None, y), sep_max)
        assert [(s.start, s.end) for s in seg.segments] == [(0, 199)]


def test_infinite_threshold_single_segment(rng):
    y = rng.normal(size=150)
    seg = segment_series(TimeSeries(0, None, y), math.inf)
    assert len(seg) == 1


def test_corner_series_cut_near_corner():
    x = np.arange(100)
    y = np.where(x < 50, x, 100 - x).astype(float)
    seg = segment_series(TimeSeries(0, None, y), 0.01)
    assert len(seg) == 2
    assert abs(seg.cut_points[0] - 50) <= 2
    # brute force: rerun the greedy rule with a fresh batch fit per window
    assert greedy_segments(y, 0.01) == [(s.start, s.end) for s in seg.segments]


def test_segment_fields(rng):
    y = rng.normal(size=120)
    seg = segment_series(TimeSeries(0, None, y), 20.0)
    for s in seg.segments:
        coef, sse = batch_fit(y[s.start : s.end + 1])
        assert s.point_count >= 2
        assert np.allclose(s.coefficients, coef, rtol=1e-9, atol=1e-12)
        assert s.sse == pytest.approx(sse, rel=1e-9, abs=1e-12)
        assert s.mse == pytest.approx(s.sse / s.point_count)
    for s in seg.segments[:-1]:
        assert s.sep <= 20.0 * (1 + 1e-9)


def test_short_series_is_degenerate_single_segment():
    seg = segment_series(TimeSeries(0, None, [1.0, 2.0]), 10.0)
    assert len(seg) == 1
    assert seg.segments[0].degenerate
    assert (seg.segments[0].start, seg.segments[0].end) == (0, 1)


def test_single_point_series():
    seg = segment_series(TimeSeries(0, None, [4.0]), 10.0)
    assert len(seg) == 1 and seg.segments[0].sse == 0.0


@pytest.mark.parametrize("kwargs", [dict(sep_max=0.0), dict(sep_max=-1.0), dict(sep_max=1.0, degree=0),
                                    dict(sep_max=1.0, degree=2, min_len=2)])
def test_invalid_arguments(kwargs):
    with pytest.raises(ValueError):
        segment_bounds(np.arange(10.0), **kwargs)


def _tiles(bounds, n):
    bounds = [tuple(map(int, b)) for b in bounds]
    if bounds[0][0] != 0 or bounds[-1][1] != n - 1:
        return False
    return all(b[0] == a[1] for a, b in zip(bounds, bounds[1:])) and all(s < e for s, e in bounds)


@settings(max_examples=80, deadline=None)
@given(arrays(np.float64, st.integers(4, 150), elements=st.floats(-100, 100)),
       st.sampled_from([0.5, 5.0, 10.0, 50.0, 100.0]))
def test_tiling_invariant(y, sep_max):
    assert _tiles(segment_bounds(y, sep_max), y.size)


@pytest.mark.parametrize("degree", [1, 2])
def test_matches_batch_greedy_oracle(rng, backend, degree):
    for _ in range(15):
        y = np.cumsum(rng.normal(size=int(rng.integers(10, 90))))
        y = (y - y.mean()) / y.std()
        for sep_max in (10.0, 40.0, 100.0):
            got = segment_bounds(y, sep_max, degree, backend=backend)
            assert [tuple(b) for b in got.tolist()] == greedy_segments(y, sep_max, degree)


def test_generic_path_agrees_with_kernel(rng):
    from ts3c.segmentation import _bounds_generic

    for _ in range(20):
        y = rng.normal(size=int(rng.integers(10, 200)))
        for sep_max in (10.0, 60.0):
            assert _bounds_generic(y, sep_max, 1, 3) == [tuple(b) for b in segment_bounds(y, sep_max).tolist()]


def test_threshold_monotonicity_counterexample():
    # The |mean| in the denominator makes SEP non-monotone in the window,
    # so a larger threshold can yield more segments. Reproduced with the
    # independent batch oracle.
    y = np.random.default_rng(1).normal(size=500)
    found = False
    for start in range(0, 460, 5):
        w = y[start : start + 38]
        counts = [len(greedy_segments(w, g)) for g in (60.0, 70.0)]
        if counts[1] > counts[0]:
            found = True
            assert [len(segment_bounds(w, g)) for g in (60.0, 70.0)] == counts
            break
    assert found
