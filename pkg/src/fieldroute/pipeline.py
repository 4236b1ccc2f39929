"""Cluster-first, route-second planning and baseline comparison."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .errors import InfeasibleKError, InvalidArgumentError, MissingDataError
from .ga import GaParams, ga_optimize
from .geo import METRIC_ALIASES, MATRIX, DistanceMetric, path_length
from .kmeans import ClusterAssignment, kmeans_fit
from .tsp import solve_cluster_route

# published sequential baseline: 417.53 km driven in 706.22 min
DEFAULT_SPEED_KM_PER_MIN = 0.59122


@dataclass
class GlobalRoute:
    """An open path over all stations, built cluster by cluster.

    ``tours[c]`` holds the oriented station ids of cluster ``c``; ``intra_lengths``
    and ``connector_lengths`` follow ``cluster_order``.
    """

    cluster_order: List[int]
    tours: List[List[int]]
    flattened: List[int]
    intra_lengths: List[float]
    connector_lengths: List[float]
    unit: str = "km"
    assignment: Optional[ClusterAssignment] = None

    @property
    def segment_breakdown(self) -> List[float]:
        return list(self.intra_lengths) + list(self.connector_lengths)

    @property
    def total_length(self) -> float:
        return float(sum(self.segment_breakdown))

    @property
    def n_clusters(self):
        return len(self.tours)

    def cluster_of(self) -> dict:
        return {s: c for c, tour in enumerate(self.tours) for s in tour}


@dataclass(frozen=True)
class DurationModel:
    """``analytic`` divides distance by a constant speed; ``matrix`` sums duration-matrix legs."""

    kind: str = "analytic"
    speed_km_per_min: float = DEFAULT_SPEED_KM_PER_MIN

    def __post_init__(self):
        if self.kind not in ("analytic", "matrix"):
            raise ValueError(f"unknown duration model {self.kind!r}")
        if not self.speed_km_per_min > 0:
            raise ValueError("speed must be positive")

    @classmethod
    def from_kmh(cls, speed_kmh):
        return cls("analytic", speed_kmh / 60.0)


@dataclass
class RouteMetrics:
    total_distance: float
    total_duration: float
    improvement_percent: Optional[float] = None
    unit: str = "km"


def improvement_rate(reference_distance, optimized_distance) -> float:
    """Percent reduction of ``optimized_distance`` relative to ``reference_distance``."""
    ref, opt = float(reference_distance), float(optimized_distance)
    if not (np.isfinite(ref) and np.isfinite(opt)) or opt < 0:
        raise InvalidArgumentError("distances must be finite and >= 0")
    if ref <= 0:
        raise InvalidArgumentError(f"reference distance must be > 0, got {ref}")
    return (ref - opt) / ref * 100.0


def _legs_length(dataset, ids, metric):
    return path_length([dataset[i] for i in ids], range(len(ids)), metric)


def orient_cluster_tours(tours, cluster_order, metric: DistanceMetric, dataset):
    """Flip each tour after the first if that shortens the leg from the previous tour.

    ``tours`` is indexed by cluster id and holds station ids. Ties keep the
    forward direction.
    """
    if not tours:
        raise InvalidArgumentError("no tours to orient")
    out = [list(t) for t in tours]
    prev_last = None
    for c in cluster_order:
        tour = out[c]
        if prev_last is not None and len(tour) > 1:
            fwd = metric.leg(dataset[prev_last], dataset[tour[0]])
            rev = metric.leg(dataset[prev_last], dataset[tour[-1]])
            if rev < fwd:
                tour.reverse()
        prev_last = tour[-1]
    return out


def _assemble(dataset, tours, cluster_order, metric, assignment=None):
    flattened, intra, conn = [], [], []
    for c in cluster_order:
        tour = tours[c]
        if flattened:
            conn.append(metric.leg(dataset[flattened[-1]], dataset[tour[0]]))
        intra.append(_legs_length(dataset, tour, metric))
        flattened.extend(tour)
    return GlobalRoute(list(cluster_order), tours, flattened, intra, conn, metric.unit, assignment)


def reference_route(dataset, metric: DistanceMetric = DistanceMetric.haversine()) -> GlobalRoute:
    """Stations visited in dataset row order, no optimisation."""
    if len(dataset) == 0:
        raise InvalidArgumentError("dataset is empty")
    return _assemble(dataset, [list(range(len(dataset)))], [0], metric)


def build_metric(config) -> DistanceMetric:
    from .io import load_matrix_csv

    if METRIC_ALIASES.get(config.metric, config.metric) == MATRIX:
        if not config.matrix_file:
            raise MissingDataError("metric 'matrix' needs matrix_file")
        durations = load_matrix_csv(config.duration_matrix_file) if config.duration_matrix_file else None
        return DistanceMetric.from_matrix(load_matrix_csv(config.matrix_file), durations)
    return DistanceMetric(config.metric)


def build_duration_model(config) -> DurationModel:
    if config.duration_matrix_file:
        return DurationModel("matrix")
    return DurationModel.from_kmh(config.speed_kmh)


def plan_routes(dataset, config, metric: Optional[DistanceMetric] = None) -> GlobalRoute:
    """Cluster stations, route inside clusters, order clusters by GA, stitch.

    Clustering always runs in degree space; tours, GA fitness and reported
    lengths use ``metric`` (built from ``config`` when not given). Centroids fix
    the cluster order, actual stations fix the connector legs.
    """
    n = len(dataset)
    if n == 0:
        raise InvalidArgumentError("dataset is empty")
    if config.k > n:
        raise InfeasibleKError(f"k={config.k} exceeds station count {n}")
    if metric is None:
        metric = build_metric(config)

    km_seed, ga_seed = np.random.SeedSequence(config.seed).spawn(2)
    assignment = kmeans_fit(dataset, config.k, config.kmeans_max_iterations, km_seed)

    tours = []
    for c in range(assignment.k):
        ids = assignment.members(c).tolist()
        tour = solve_cluster_route([dataset[i] for i in ids], metric, config.tsp_start_sweep)
        tours.append([ids[j] for j in tour.order])

    params = GaParams(
        population_size=config.population_size,
        iterations=config.ga_iterations,
        mutation_rate=config.mutation_rate,
        elite_count=config.elite_count,
        parent_fraction=config.parent_fraction,
        seed=ga_seed,
    )
    ga = ga_optimize(assignment.centroid_coords, metric.centroid_metric(), params)

    tours = orient_cluster_tours(tours, ga.best_order, metric, dataset)
    return _assemble(dataset, tours, ga.best_order, metric, assignment)


def compute_metrics(route: GlobalRoute, metric: DistanceMetric, duration_model: DurationModel = DurationModel(),
                    reference=None) -> RouteMetrics:
    """Distance, duration and (with ``reference``) improvement for a route.

    ``reference`` may be a :class:`RouteMetrics`, a :class:`GlobalRoute` or a
    plain distance.
    """
    distance = route.total_length
    if duration_model.kind == "matrix":
        if metric.durations is None:
            raise MissingDataError("matrix duration model requested without a duration matrix")
        ids = route.flattened
        duration = float(sum(metric.duration_leg(a, b) for a, b in zip(ids, ids[1:])))
    else:
        duration = distance / duration_model.speed_km_per_min
    improvement = None
    if reference is not None:
        if isinstance(reference, RouteMetrics):
            ref = reference.total_distance
        elif isinstance(reference, GlobalRoute):
            ref = reference.total_length
        else:
            ref = float(reference)
        improvement = improvement_rate(ref, distance)
    return RouteMetrics(distance, duration, improvement, route.unit)


# -- reports ---------------------------------------------------------------

@dataclass
class ReportRow:
    config_id: str
    clusters: int
    total_distance: float
    total_duration: float
    improvement_percent: Optional[float] = None
    is_baseline: bool = False

    def as_dict(self, unit="km"):
        return {
            "config_id": self.config_id,
            "clusters": self.clusters,
            f"total_distance_{unit}": round(self.total_distance, 6),
            "total_duration_min": round(self.total_duration, 6),
            "improvement_percent": None if self.improvement_percent is None else round(self.improvement_percent, 6),
            "baseline": self.is_baseline,
        }


def report_row(config_id, clusters, metrics: RouteMetrics, baseline=False) -> ReportRow:
    return ReportRow(str(config_id), int(clusters), metrics.total_distance, metrics.total_duration,
                     metrics.improvement_percent, baseline)


def render_text(rows, unit="km") -> str:
    header = ["Config", "Clusters", f"Distance ({unit})", "Duration (min)", "Improvement vs sequential (%)"]
    body = []
    for r in rows:
        clusters = f"{r.clusters} (points)" if r.is_baseline else str(r.clusters)
        imp = "-" if r.improvement_percent is None else f"{r.improvement_percent:.2f}"
        body.append([r.config_id, clusters, f"{r.total_distance:.2f}", f"{r.total_duration:.2f}", imp])
    widths = [max(len(x) for x in col) for col in zip(header, *body)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in body]
    return "\n".join(lines) + "\n"


def render_json(rows, unit="km", **extra) -> str:
    doc = dict(extra)
    doc["rows"] = [r.as_dict(unit) for r in rows]
    return json.dumps(doc, indent=2) + "\n"
