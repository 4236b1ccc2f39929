"""Lloyd-style K-means over (lat, lon) pairs in raw degree space."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List

import numpy as np

from .errors import InfeasibleKError, InvalidArgumentError
from .geo import Coordinate, Station


def as_points(points) -> np.ndarray:
    """(n, 2) float array of [lat, lon] from Coordinates, Stations or an array."""
    if isinstance(points, np.ndarray):
        arr = np.asarray(points, dtype=float)
    else:
        rows = []
        for p in points:
            if isinstance(p, Station):
                p = p.coord
            if isinstance(p, Coordinate):
                rows.append((p.lat, p.lon))
            else:
                rows.append(tuple(p))
        arr = np.array(rows, dtype=float).reshape(-1, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise InvalidArgumentError(f"points must have shape (n, 2), got {arr.shape}")
    return arr


@dataclass
class ClusterAssignment:
    k: int
    labels: np.ndarray
    centroids: np.ndarray
    sse: float
    iterations_run: int
    sse_trace: List[float] = field(default_factory=list)
    converged: bool = False

    @property
    def centroid_coords(self) -> List[Coordinate]:
        return [Coordinate(lat, lon) for lat, lon in self.centroids]

    @property
    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.k)

    def members(self, c) -> np.ndarray:
        """Indices of the points in cluster ``c``, ascending."""
        return np.flatnonzero(self.labels == c)


def _distances(points, centroids):
    diff = points[:, None, :] - centroids[None, :, :]
    return np.sqrt(diff[..., 0] ** 2 + diff[..., 1] ** 2)


def assign_points(points, centroids) -> np.ndarray:
    """Nearest-centroid label per point; ties go to the lowest centroid index."""
    p, c = as_points(points), as_points(centroids)
    if len(c) == 0:
        raise InvalidArgumentError("centroid list is empty")
    if len(p) == 0:
        raise InvalidArgumentError("point list is empty")
    # argmin returns the first minimum, which is the tie-break rule
    return np.argmin(_distances(p, c), axis=1)


def update_centroids(points, labels, k):
    """Mean of each cluster's members.

    Returns ``(centroids, empty)``: rows of empty clusters are NaN and their
    indices are listed in ``empty`` so the caller can reseed them.
    """
    p = as_points(points)
    labels = np.asarray(labels)
    centroids = np.full((k, 2), np.nan)
    empty = []
    for c in range(k):
        m = labels == c
        if m.any():
            centroids[c] = p[m].mean(axis=0)
        else:
            empty.append(c)
    return centroids, empty


def sse(points, labels, centroids) -> float:
    p = as_points(points)
    d = p - np.asarray(centroids)[labels]
    return float(np.sum(d[:, 0] ** 2 + d[:, 1] ** 2))


def _repair_empty(p, labels, centroids, empty):
    # move the point farthest from its centroid into each empty cluster
    labels = labels.copy()
    centroids = centroids.copy()
    for c in empty:
        sizes = np.bincount(labels, minlength=len(centroids))
        d2 = np.sum((p - centroids[labels]) ** 2, axis=1)
        d2[sizes[labels] <= 1] = -1.0
        i = int(np.argmax(d2))
        labels[i] = c
        centroids[c] = p[i]
    return labels, centroids


def forgy_init(points, k, rng) -> np.ndarray:
    """k distinct point coordinates sampled uniformly without replacement."""
    p = as_points(points)
    _, first = np.unique(p, axis=0, return_index=True)
    first = np.sort(first)
    if len(first) < k:
        raise InfeasibleKError(f"k={k} exceeds the {len(first)} distinct coordinates")
    pick = rng.choice(len(first), size=k, replace=False)
    return p[first[pick]].copy()


def _check_k(n, k):
    if k < 1:
        raise InvalidArgumentError(f"k must be >= 1, got {k}")
    if k > n:
        raise InfeasibleKError(f"k={k} exceeds number of points {n}")


def kmeans_fit_from(points, initial_centroids, max_iterations=10) -> ClusterAssignment:
    """Run Lloyd iterations from explicit starting centroids.

    Stops once an assignment step leaves every label unchanged, or after
    ``max_iterations`` assignment/update rounds. If the cap is hit, labels get
    one last nearest-centroid pass against the final centroids.
    """
    p = as_points(points)
    c = as_points(initial_centroids).copy()
    k = len(c)
    _check_k(len(p), k)
    if max_iterations < 1:
        raise InvalidArgumentError(f"max_iterations must be >= 1, got {max_iterations}")

    labels = None
    trace = []
    converged = False
    it = 0
    for it in range(1, max_iterations + 1):
        new = assign_points(p, c)
        _, empty = update_centroids(p, new, k)
        if empty:
            new, c = _repair_empty(p, new, c, empty)
        c, _ = update_centroids(p, new, k)
        trace.append(sse(p, new, c))
        if labels is not None and np.array_equal(new, labels):
            converged = True
            labels = new
            break
        labels = new

    if not converged:
        final = assign_points(p, c)
        if np.bincount(final, minlength=k).min() > 0:
            labels = final
    return ClusterAssignment(
        k=k,
        labels=labels,
        centroids=c,
        sse=sse(p, labels, c),
        iterations_run=it,
        sse_trace=trace,
        converged=converged,
    )


def kmeans_fit(points, k, max_iterations=10, rng_seed=0) -> ClusterAssignment:
    """Seeded Forgy initialisation followed by :func:`kmeans_fit_from`."""
    p = as_points(points)
    _check_k(len(p), k)
    rng = np.random.default_rng(rng_seed)
    return kmeans_fit_from(p, forgy_init(p, k, rng), max_iterations)
