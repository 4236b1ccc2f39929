"""Routing inside one cluster.

Nearest neighbour builds a path, 2-opt removes crossings. On small clusters
the exhaustive oracle shows how close that gets.
"""
import numpy as np

from fieldroute.geo import Coordinate, DistanceMetric
from fieldroute.tsp import brute_force_tour, nearest_neighbor_tour, solve_cluster_route, two_opt_improve

H = DistanceMetric.haversine()
rng = np.random.default_rng(1)
members = [Coordinate(*p) for p in rng.uniform((40.9, 29.0), (41.0, 29.2), (8, 2))]

nn = nearest_neighbor_tour(members, H)
improved = two_opt_improve(nn, members, H)
best = brute_force_tour(members, H)
print(f"nearest neighbour: {nn.length:.3f} km  {nn.order}")
print(f"after 2-opt:       {improved.length:.3f} km  {improved.order}")
print(f"exhaustive best:   {best.length:.3f} km  {best.order}")

gaps = []
for _ in range(200):
    pts = [Coordinate(*p) for p in rng.uniform((40.9, 29.0), (41.0, 29.2), (7, 2))]
    gaps.append(solve_cluster_route(pts, H).length / brute_force_tour(pts, H).length - 1)
gaps = np.array(gaps)
print(f"200 random 7-station clusters: optimal {np.mean(gaps < 1e-12):.0%}, "
      f"mean gap {gaps.mean():.2%}, worst {gaps.max():.2%}")
