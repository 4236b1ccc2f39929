"""Distances between charging stations.

Two analytic metrics are built in: raw-degree Euclidean (what K-means uses)
and great-circle kilometres (the default for route lengths). A third kind
reads a road-distance matrix from CSV.
"""
from fieldroute.datasets import load_istanbul
from fieldroute.geo import DistanceMetric, euclidean_degrees, haversine_km, path_length

stations = load_istanbul()
a, b = stations[0], stations[1]
print(f"{a.name} -> {b.name}")
print(f"  euclidean: {euclidean_degrees(a, b):.5f} deg")
print(f"  haversine: {haversine_km(a, b):.3f} km")

# the first ten stations, visited in file order
first10 = stations[:10]
for metric in (DistanceMetric.euclidean(), DistanceMetric.haversine()):
    print(f"first ten in order: {path_length(first10, range(10), metric):.4f} {metric.unit}")

# a road matrix is just an N x N table indexed by station id; here we fake one
# by inflating great-circle distances by 30%
road = DistanceMetric.haversine().pairwise(stations) * 1.3
matrix = DistanceMetric.from_matrix(road)
print(f"first ten on the fake road matrix: {path_length(first10, range(10), matrix):.2f} km")
