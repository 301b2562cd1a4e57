import numpy as np
import pytest

from ts3c.dataset_io import Dataset, TimeSeries
from ts3c.segment_features import MappedSegment
from ts3c.segmentation import Segment
from ts3c.series_mapping import (
    ClusterSummary,
    build_mapped_dataset,
    mapped_length,
    mapped_matrix,
    match_centroids,
    summarize_series,
)


def _mapped(features, sse, n=10):
    seg = Segment(0, n - 1, np.zeros(2), sse, 0.0)
    return MappedSegment(np.asarray(features, dtype=float), seg)


def test_single_segment_duplicated():
    s = summarize_series([_mapped([1, 2, 3, 4], 5.0)], k=2)
    assert len(s.summaries) == 2
    assert np.array_equal(s.summaries[0].vector(), s.summaries[1].vector())
    assert s.md == 0.0 and s.m == 1


def test_two_identical_segments():
    s = summarize_series([_mapped([1, 1, 1, 1], 2.0), _mapped([1, 1, 1, 1], 2.0)], k=2)
    assert s.md == 0.0


def test_empty_rejected():
    with pytest.raises(ValueError):
        summarize_series([], 2)


def test_two_blobs_against_enumeration():
    a = [[0, 1.0, 0, 0], [0.2, 1.5, 0, 0.1], [0.1, 0.8, 0.1, 0]]
    b = [[10, 4.0, 1, 1], [10.3, 3.0, 1, 1], [9.8, 5.0, 1.2, 1]]
    sses = [1.0, 2.0, 3.0, 4.0, 5.0, 6.5]
    segs = [_mapped(f, e) for f, e in zip(a + b, sses)]
    s = summarize_series(segs, k=2)
    assert np.allclose(s.summaries[0].centroid, np.mean(a, axis=0))
    assert np.allclose(s.summaries[1].centroid, np.mean(b, axis=0))
    assert np.array_equal(s.summaries[0].extreme, a[1])
    assert np.array_equal(s.summaries[1].extreme, b[2])
    cents = [np.mean(a, axis=0)] * 3 + [np.mean(b, axis=0)] * 3
    pairs = [(float(np.linalg.norm(np.asarray(f) - c)), e / 10) for f, c, e in zip(a + b, cents, sses)]
    far = max(pairs)[1]
    near = min(pairs)[1]
    assert s.md == pytest.approx(far - near, rel=1e-12)


def _summaries(cents):
    return [ClusterSummary(np.asarray(c, float), np.asarray(c, float)) for c in cents]


def test_match_identity_and_swap():
    ref = _summaries([[0, 0], [5, 5]])
    assert match_centroids(ref, ref) == [0, 1]
    assert match_centroids(ref, ref[::-1]) == [1, 0]


def test_match_greedy_takes_global_minimum_pair(rng):
    for _ in range(200):
        ref = _summaries(rng.normal(size=(2, 3)))
        oth = _summaries(rng.normal(size=(2, 3)))
        d = np.array([[np.linalg.norm(r.centroid - o.centroid) for o in oth] for r in ref])
        r, o = np.unravel_index(np.argmin(d), d.shape)
        got = match_centroids(ref, oth)
        assert got[r] == o and got[1 - r] == 1 - o


def test_match_greedy_is_not_min_total():
    # d ~ [[1, 2], [99, 100.02]]: greedy locks (0, 0) first and totals 101.02,
    # the swap totals 101
    ref = _summaries([[0.0, 0.0], [100.0, 0.0]])
    oth = _summaries([[1.0, 0.0], [0.0, 2.0]])
    assert match_centroids(ref, oth) == [0, 1]


def test_match_is_permutation(rng):
    for k in range(1, 6):
        ref = _summaries(rng.normal(size=(k, 2)))
        oth = _summaries(rng.normal(size=(k, 2)))
        assert sorted(match_centroids(ref, oth)) == list(range(k))


def test_mapped_length_default():
    assert mapped_length() == 18


def _dataset(rng, n=6):
    return Dataset("d", tuple(TimeSeries(i, None, np.cumsum(rng.normal(size=120))) for i in range(n)))


def test_fixed_width_and_segment_count(rng, backend):
    ds = _dataset(rng)
    for sep_max in (5.0, 30.0, 100.0):
        mapped = build_mapped_dataset(ds, sep_max, backend=backend)
        assert {m.vector.size for m in mapped} == {18}
        from ts3c.segmentation import segment_series

        for m, s in zip(mapped, ds.series):
            assert m.vector[-1] == len(segment_series(s, sep_max))


def test_single_series_dataset(rng):
    ds = Dataset("one", (TimeSeries(0, None, rng.normal(size=50)),))
    assert len(build_mapped_dataset(ds, 10.0)) == 1


def test_copies_map_identically(rng):
    y = np.cumsum(rng.normal(size=150))
    ds = Dataset("c", (TimeSeries(0, None, y), TimeSeries(1, None, y.copy())))
    m = build_mapped_dataset(ds, 20.0)
    assert np.array_equal(m[0].vector, m[1].vector)


def test_threads_do_not_change_result(rng):
    ds = _dataset(rng, 10)
    a = mapped_matrix(build_mapped_dataset(ds, 20.0))
    b = mapped_matrix(build_mapped_dataset(ds, 20.0, jobs=4))
    assert np.array_equal(a, b)


@pytest.mark.parametrize("degree, k", [(2, 2), (1, 3)])
def test_width_formula(rng, degree, k):
    ds = _dataset(rng, 4)
    assert {m.vector.size for m in build_mapped_dataset(ds, 20.0, degree, k)} == {mapped_length(degree, k)}
