"""Open-path tours inside one cluster: nearest neighbour, 2-opt, exhaustive oracle."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List

from .errors import InvalidArgumentError, SizeLimitError
from .geo import DistanceMetric, check_permutation, path_length

BRUTE_FORCE_LIMIT = 10
_EPS = 1e-12


@dataclass
class Tour:
    order: List[int]
    length: float
    open_path: bool = True


def _table(members, metric):
    if len(members) == 0:
        raise InvalidArgumentError("cluster has no members")
    return metric.pairwise(members).tolist()


def _tour(members, order, metric):
    return Tour(list(order), path_length(members, order, metric, closed=False))


def _nn_order(d, start):
    n = len(d)
    order = [start]
    left = set(range(n)) - {start}
    while left:
        row = d[order[-1]]
        # min over sorted candidates keeps the lowest index on ties
        nxt = min(sorted(left), key=row.__getitem__)
        order.append(nxt)
        left.remove(nxt)
    return order


def nearest_neighbor_tour(members, metric: DistanceMetric, start_index=0) -> Tour:
    d = _table(members, metric)
    if not 0 <= start_index < len(d):
        raise InvalidArgumentError(f"start_index {start_index} out of range")
    return _tour(members, _nn_order(d, start_index), metric)


def _reverse_delta(order, d, i, j, symmetric):
    n = len(order)
    b, c = order[i], order[j]
    delta = 0.0
    if i > 0:
        a = order[i - 1]
        delta += d[a][c] - d[a][b]
    if j < n - 1:
        e = order[j + 1]
        delta += d[b][e] - d[c][e]
    if not symmetric:
        for k in range(i, j):
            u, v = order[k], order[k + 1]
            delta += d[v][u] - d[u][v]
    return delta


def _two_opt(order, d, symmetric):
    order = list(order)
    n = len(order)
    improved = True
    while improved:
        improved = False
        for i in range(n - 1):
            for j in range(i + 1, n):
                if _reverse_delta(order, d, i, j, symmetric) < -_EPS:
                    order[i:j + 1] = order[i:j + 1][::-1]
                    improved = True
    return order


def two_opt_improve(tour: Tour, members, metric: DistanceMetric) -> Tour:
    """First-improvement 2-opt on an open path until no reversal helps."""
    d = _table(members, metric)
    order = check_permutation(tour.order, len(d))
    return _tour(members, _two_opt(order, d, metric.symmetric), metric)


def brute_force_tour(members, metric: DistanceMetric) -> Tour:
    """Exact shortest open path; ties resolve to the lexicographically smallest order."""
    n = len(members)
    if n > BRUTE_FORCE_LIMIT:
        raise SizeLimitError(f"brute force limited to {BRUTE_FORCE_LIMIT} points, got {n}")
    d = _table(members, metric)
    best, best_len = None, float("inf")
    for perm in itertools.permutations(range(n)):
        # a reversed path has equal length and a smaller twin was already seen
        if metric.symmetric and n > 1 and perm[0] > perm[-1]:
            continue
        length = 0.0
        for u, v in zip(perm, perm[1:]):
            length += d[u][v]
        if length < best_len:
            best, best_len = perm, length
    return _tour(members, best, metric)


def solve_cluster_route(members, metric: DistanceMetric, start_sweep=False) -> Tour:
    """Nearest neighbour from member 0 (or the best start, if sweeping), then 2-opt."""
    d = _table(members, metric)
    starts = range(len(d)) if start_sweep else [0]
    best = None
    for s in starts:
        order = _two_opt(_nn_order(d, s), d, metric.symmetric)
        tour = _tour(members, order, metric)
        if best is None or tour.length < best.length:
            best = tour
    return best
