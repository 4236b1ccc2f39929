import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import blobs
from fieldroute.errors import InfeasibleKError, InvalidArgumentError
from fieldroute.geo import Coordinate, euclidean_degrees
from fieldroute.kmeans import (
    as_points,
    assign_points,
    kmeans_fit,
    kmeans_fit_from,
    update_centroids,
)


def brute_labels(points, centroids):
    # independent nearest-centroid loop with explicit first-index tie-break
    out = []
    for p in points:
        best, best_d = None, None
        for c, q in enumerate(centroids):
            d = euclidean_degrees(p, q)
            if best_d is None or d < best_d:
                best, best_d = c, d
        out.append(best)
    return out


def test_assign_examples():
    assert assign_points([Coordinate(0, 0)], [Coordinate(0, 0), Coordinate(5, 5)]).tolist() == [0]
    assert assign_points([Coordinate(0, 1)], [Coordinate(0, 0), Coordinate(0, 2)]).tolist() == [0]
    pts = [Coordinate(0, 0), Coordinate(10, 10), Coordinate(0, 1)]
    assert assign_points(pts, [Coordinate(0, 0), Coordinate(10, 10)]).tolist() == [0, 1, 0]


def test_assign_rejects_empty_centroids():
    with pytest.raises(InvalidArgumentError):
        assign_points([Coordinate(0, 0)], [])


def test_update_examples():
    c, empty = update_centroids([Coordinate(0, 0), Coordinate(2, 0)], [0, 0], 1)
    assert c.tolist() == [[1.0, 0.0]] and empty == []
    c, _ = update_centroids([Coordinate(3, 7)], [0], 1)
    assert c.tolist() == [[3.0, 7.0]]
    c, _ = update_centroids([Coordinate(0, 0), Coordinate(0, 3), Coordinate(3, 0)], [0, 0, 0], 1)
    assert c.tolist() == [[1.0, 1.0]]


def test_update_flags_empty_cluster():
    c, empty = update_centroids([Coordinate(0, 0), Coordinate(1, 1)], [0, 0], 3)
    assert empty == [1, 2]
    assert np.isnan(c[1]).all() and np.isnan(c[2]).all()


def test_k_equals_n_gives_zero_sse(rng):
    pts = as_points(rng.uniform(0, 5, (12, 2)))
    fit = kmeans_fit(pts, 12, max_iterations=10, rng_seed=4)
    assert fit.sse == 0.0
    assert sorted(fit.labels.tolist()) == list(range(12))


def test_k_one_is_global_mean(rng):
    pts = as_points(rng.uniform(0, 5, (30, 2)))
    fit = kmeans_fit(pts, 1)
    np.testing.assert_allclose(fit.centroids[0], pts.mean(axis=0), rtol=0, atol=1e-12)
    assert fit.converged


def test_two_separated_blobs(rng):
    pts = blobs(rng, [(40.0, 29.0), (41.0, 30.0)], per=10, spread=0.001)
    truth = [0] * 10 + [1] * 10
    for seed in range(10):
        fit = kmeans_fit(pts, 2, max_iterations=10, rng_seed=seed)
        labels = fit.labels.tolist()
        # same partition as the blobs, up to relabelling
        assert len({(t, l) for t, l in zip(truth, labels)}) == 2
        # exhaustive check: each point is nearer its own blob mean than the other one
        means = [np.mean([(p.lat, p.lon) for p, t in zip(pts, truth) if t == b], axis=0) for b in (0, 1)]
        mean_coords = [Coordinate(*m) for m in means]
        assert brute_labels(pts, mean_coords) == truth


def test_errors():
    pts = [Coordinate(0, 0), Coordinate(1, 1)]
    with pytest.raises(InfeasibleKError):
        kmeans_fit(pts, 3)
    with pytest.raises(InvalidArgumentError):
        kmeans_fit(pts, 0)
    with pytest.raises(InvalidArgumentError):
        kmeans_fit(pts, 1, max_iterations=0)


def test_duplicate_coordinates_limit_k():
    pts = [Coordinate(0, 0)] * 3 + [Coordinate(1, 1)]
    assert kmeans_fit(pts, 2).sse == 0.0
    with pytest.raises(InfeasibleKError):
        kmeans_fit(pts, 3)


def test_empty_cluster_is_reseeded_with_farthest_point():
    pts = [Coordinate(0, 0), Coordinate(0, 1), Coordinate(0, 10), Coordinate(0, 11)]
    # third centroid attracts nothing on the first assignment
    init = [Coordinate(0, 0.5), Coordinate(0, 10.5), Coordinate(50, 50)]
    fit = kmeans_fit_from(pts, init, max_iterations=10)
    assert fit.sizes.min() >= 1
    assert fit.k == 3


def test_determinism(rng):
    pts = as_points(rng.uniform(0, 5, (80, 2)))
    a = kmeans_fit(pts, 6, 20, rng_seed=9)
    b = kmeans_fit(pts, 6, 20, rng_seed=9)
    assert np.array_equal(a.labels, b.labels)
    assert np.array_equal(a.centroids, b.centroids)


def test_permuting_points_keeps_sse_with_same_init(rng):
    pts = as_points(rng.uniform(0, 5, (60, 2)))
    init = pts[[3, 17, 42, 50]].copy()
    base = kmeans_fit_from(pts, init, 100)
    perm = rng.permutation(len(pts))
    other = kmeans_fit_from(pts[perm], init, 100)
    assert other.sse == pytest.approx(base.sse, rel=1e-12)
    assert np.array_equal(other.labels, base.labels[perm])


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 120), st.integers(1, 8), st.integers(0, 2**32 - 1))
def test_fit_invariants(n, k, seed):
    k = min(k, n)
    r = np.random.default_rng(seed)
    pts = as_points(r.uniform(-5, 5, (n, 2)))
    fit = kmeans_fit(pts, k, max_iterations=300, rng_seed=seed)
    trace = fit.sse_trace
    assert all(b <= a + 1e-12 for a, b in zip(trace, trace[1:]))
    assert fit.sizes.min() >= 1
    assert set(fit.labels.tolist()) <= set(range(k))
    if fit.converged:
        assert fit.labels.tolist() == brute_labels([Coordinate(*p) for p in pts], fit.centroid_coords)
        for c in range(k):
            np.testing.assert_allclose(fit.centroids[c], pts[fit.labels == c].mean(axis=0), rtol=0, atol=1e-12)
