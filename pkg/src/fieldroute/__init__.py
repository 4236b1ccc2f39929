"""Cluster-first, route-second maintenance route planning."""
from .errors import FieldRouteError
from .ga import GaParams, GaResult, ga_optimize
from .geo import Coordinate, DistanceMetric, Station, euclidean_degrees, haversine_km, path_length
from .io import Config, load_config, load_stations_csv
from .kmeans import ClusterAssignment, kmeans_fit
from .pipeline import (
    DurationModel,
    GlobalRoute,
    RouteMetrics,
    compute_metrics,
    improvement_rate,
    plan_routes,
    reference_route,
)
from .tsp import Tour, solve_cluster_route

__version__ = "0.1.0"
