"""Coordinates, distance metrics and path-length accounting."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .errors import InvalidCoordinateError, InvalidOrderError, MatrixBoundsError, MissingDataError

EARTH_RADIUS_KM = 6371.0088

EUCLIDEAN = "euclidean-degrees"
HAVERSINE = "haversine-km"
MATRIX = "matrix-backed"
METRIC_KINDS = (EUCLIDEAN, HAVERSINE, MATRIX)

# short names used in config files and on the command line
METRIC_ALIASES = {"euclidean": EUCLIDEAN, "haversine": HAVERSINE, "matrix": MATRIX}


@dataclass(frozen=True)
class Coordinate:
    lat: float
    lon: float

    def __post_init__(self):
        lat, lon = float(self.lat), float(self.lon)
        if not (math.isfinite(lat) and math.isfinite(lon)):
            raise InvalidCoordinateError(f"non-finite coordinate ({self.lat}, {self.lon})")
        if not -90.0 <= lat <= 90.0:
            raise InvalidCoordinateError(f"latitude {lat} outside [-90, 90]")
        if not -180.0 <= lon <= 180.0:
            raise InvalidCoordinateError(f"longitude {lon} outside [-180, 180]")
        object.__setattr__(self, "lat", lat)
        object.__setattr__(self, "lon", lon)


@dataclass(frozen=True)
class Station:
    id: int
    name: str
    coord: Coordinate

    def __post_init__(self):
        if not self.name:
            raise ValueError("station name must be non-empty")

    @property
    def lat(self):
        return self.coord.lat

    @property
    def lon(self):
        return self.coord.lon


Point = Union[Coordinate, Station]


def _coord(p: Point) -> Coordinate:
    if isinstance(p, Station):
        return p.coord
    if isinstance(p, Coordinate):
        return p
    raise InvalidCoordinateError(f"expected Coordinate or Station, got {type(p).__name__}")


def euclidean_degrees(a: Point, b: Point) -> float:
    """Planar distance in raw degree space, as used for K-means assignment."""
    a, b = _coord(a), _coord(b)
    return math.sqrt((a.lat - b.lat) ** 2 + (a.lon - b.lon) ** 2)


def haversine_km(a: Point, b: Point) -> float:
    """Great-circle distance in kilometres on a sphere of mean Earth radius."""
    a, b = _coord(a), _coord(b)
    if a == b:
        return 0.0
    phi1, phi2 = math.radians(a.lat), math.radians(b.lat)
    dphi = phi2 - phi1
    dlmb = math.radians(b.lon - a.lon)
    h = math.sin(dphi / 2) ** 2 + math.cos(phi1) * math.cos(phi2) * math.sin(dlmb / 2) ** 2
    return 2 * EARTH_RADIUS_KM * math.asin(min(1.0, math.sqrt(h)))


def _check_matrix(m, name):
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    if not np.all(np.isfinite(m)) or np.any(m < 0):
        raise ValueError(f"{name} entries must be finite and >= 0")
    if np.any(np.diag(m) != 0):
        raise ValueError(f"{name} must be zero on the diagonal")
    m.setflags(write=False)
    return m


@dataclass(frozen=True, eq=False)
class DistanceMetric:
    """A leg-distance rule.

    ``matrix`` (km) and ``durations`` (min) are indexed by station id and are
    only consulted for the matrix-backed kind. Matrix legs are looked up
    directionally; no symmetry is assumed.
    """

    kind: str = HAVERSINE
    matrix: Optional[np.ndarray] = None
    durations: Optional[np.ndarray] = None

    def __post_init__(self):
        kind = METRIC_ALIASES.get(self.kind, self.kind)
        if kind not in METRIC_KINDS:
            raise ValueError(f"unknown metric kind {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        if kind == MATRIX and self.matrix is None:
            raise ValueError("matrix-backed metric needs a distance matrix")
        if self.matrix is not None:
            object.__setattr__(self, "matrix", _check_matrix(self.matrix, "distance matrix"))
        if self.durations is not None:
            d = _check_matrix(self.durations, "duration matrix")
            if self.matrix is not None and d.shape != self.matrix.shape:
                raise ValueError("duration matrix shape differs from distance matrix")
            object.__setattr__(self, "durations", d)

    @classmethod
    def euclidean(cls):
        return cls(EUCLIDEAN)

    @classmethod
    def haversine(cls):
        return cls(HAVERSINE)

    @classmethod
    def from_matrix(cls, matrix, durations=None):
        return cls(MATRIX, matrix, durations)

    @property
    def symmetric(self):
        return self.kind != MATRIX

    @property
    def unit(self):
        return "deg" if self.kind == EUCLIDEAN else "km"

    def centroid_metric(self) -> "DistanceMetric":
        """Metric for points that are not dataset stations (cluster centroids).

        A matrix only knows stations, so centroids fall back to great-circle km.
        """
        return DistanceMetric.haversine() if self.kind == MATRIX else self

    def _index(self, p, table):
        if isinstance(p, Station):
            i = p.id
        elif isinstance(p, (int, np.integer)):
            i = int(p)
        else:
            raise TypeError("matrix-backed metric needs Station objects or station ids")
        if not 0 <= i < table.shape[0]:
            raise MatrixBoundsError(f"station id {i} outside matrix of size {table.shape[0]}")
        return i

    def leg(self, a: Point, b: Point) -> float:
        if self.kind == EUCLIDEAN:
            return euclidean_degrees(a, b)
        if self.kind == HAVERSINE:
            return haversine_km(a, b)
        return float(self.matrix[self._index(a, self.matrix), self._index(b, self.matrix)])

    def duration_leg(self, a: Point, b: Point) -> float:
        if self.durations is None:
            raise MissingDataError("no duration matrix loaded")
        return float(self.durations[self._index(a, self.durations), self._index(b, self.durations)])

    def pairwise(self, points: Sequence[Point]) -> np.ndarray:
        """Full leg table ``D[i, j] = leg(points[i], points[j])``."""
        n = len(points)
        if self.kind == MATRIX:
            idx = [self._index(p, self.matrix) for p in points]
            return self.matrix[np.ix_(idx, idx)].copy()
        d = np.zeros((n, n))
        for i in range(n):
            for j in range(i + 1, n):
                d[i, j] = d[j, i] = self.leg(points[i], points[j])
        return d


def check_permutation(order, n):
    order = [int(i) for i in order]
    if len(order) != n or sorted(order) != list(range(n)):
        raise InvalidOrderError(f"order is not a permutation of 0..{n - 1}: {order}")
    return order


def path_length(points: Sequence[Point], order, metric: DistanceMetric, closed: bool = False) -> float:
    """Sum of consecutive leg lengths along ``order``; ``closed`` adds the return leg."""
    if len(points) < 1:
        raise InvalidOrderError("path needs at least one point")
    order = check_permutation(order, len(points))
    total = 0.0
    for i, j in zip(order, order[1:]):
        total += metric.leg(points[i], points[j])
    if closed and len(order) > 1:
        total += metric.leg(points[order[-1]], points[order[0]])
    return total


def matrix_path_length(d, order, closed=False) -> float:
    """Same as :func:`path_length` but over a precomputed leg table."""
    total = 0.0
    for i, j in zip(order, order[1:]):
        total += d[i][j]
    if closed and len(order) > 1:
        total += d[order[-1]][order[0]]
    return float(total)
