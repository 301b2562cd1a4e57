import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

import oracles
from oracles import batch_fit
from ts3c.segment_features import autocorrelation, feature_length, map_segment, skewness, variance
from ts3c.segmentation import fit_segment, segment_series
from ts3c.dataset_io import TimeSeries


@pytest.mark.parametrize("values, expected", [((5, 5, 5, 5), 0.0), ((0, 2), 1.0), ((1, 2, 3), 2 / 3)])
def test_variance_examples(values, expected):
    assert variance(values) == pytest.approx(expected, abs=1e-15)


def test_skewness_examples():
    assert skewness((1, 2, 3)) == pytest.approx(0.0, abs=1e-15)
    assert skewness((4, 4, 4)) == 0.0
    assert skewness((0, 0, 3)) == pytest.approx(2 / 2**1.5, rel=1e-12)
    assert skewness((0, 0, 3)) == pytest.approx(oracles.skewness([0, 0, 3]), rel=1e-12)


def test_autocorrelation_examples():
    assert autocorrelation((7, 7, 7)) == 0.0
    assert autocorrelation((1, -1, 1, -1)) == pytest.approx(-3.0, rel=1e-12)
    assert autocorrelation((0, 1, 2, 3)) == pytest.approx(oracles.autocorrelation([0, 1, 2, 3]), rel=1e-12)


def test_constant_with_inexact_mean_is_exactly_zero():
    v = [0.1] * 7
    assert (variance(v), skewness(v), autocorrelation(v)) == (0.0, 0.0, 0.0)


def test_exact_line_features():
    y = 2.0 * np.arange(10)
    f = map_segment(fit_segment(y, 0, 9), y).features
    assert f[0] == pytest.approx(2.0, rel=1e-12)
    assert f[1] == pytest.approx(oracles.pop_variance(list(y)), rel=1e-12)
    assert f[2] == pytest.approx(0.0, abs=1e-12)


def test_constant_segment_features():
    y = np.full(6, 3.3)
    assert np.array_equal(map_segment(fit_segment(y, 0, 5), y).features, [0.0, 0.0, 0.0, 0.0])


def test_random_segments_match_oracles(rng):
    y = rng.normal(size=300)
    seg = segment_series(TimeSeries(0, None, y), 30.0)
    for s in seg.segments:
        v = list(y[s.start : s.end + 1])
        f = map_segment(s, y).features
        coef, _ = batch_fit(v)
        expected = [coef[1], oracles.pop_variance(v), oracles.skewness(v), oracles.autocorrelation(v)]
        assert np.allclose(f, expected, rtol=1e-9, atol=1e-10)


@pytest.mark.parametrize("degree", [1, 2, 3])
def test_vector_length(rng, degree):
    y = rng.normal(size=200)
    seg = segment_series(TimeSeries(0, None, y), 20.0, degree)
    assert {map_segment(s, y).features.size for s in seg.segments} == {feature_length(degree)}


@settings(max_examples=60, deadline=None)
@given(arrays(np.float64, st.integers(3, 40), elements=st.floats(-10, 10)), st.floats(-50, 50))
def test_translation_invariance(y, shift):
    a = map_segment(fit_segment(y, 0, y.size - 1), y).features
    z = y + shift
    b = map_segment(fit_segment(z, 0, z.size - 1), z).features
    var = oracles.pop_variance(list(y))
    if var < 1e-6:
        return  # near-constant input is dominated by rounding
    assert b[0] == pytest.approx(a[0], rel=1e-6, abs=1e-6)
    assert b[1] == pytest.approx(a[1], rel=1e-6, abs=1e-9)
    assert b[2] == pytest.approx(a[2], rel=1e-5, abs=1e-5)
    assert b[3] == pytest.approx(a[3], rel=1e-5, abs=1e-5)
