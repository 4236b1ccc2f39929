"""Genetic algorithm over the visiting order of cluster centroids.

Population arrays are ``(population_size, n_clusters)`` integer matrices so a
generation is bred and scored with a handful of numpy calls. The single-pair
helpers (:func:`ox1_crossover`, :func:`swap_mutation`) run the same kernels on
a one-row batch.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List

import numpy as np

from .errors import InvalidArgumentError
from .geo import Coordinate, DistanceMetric, check_permutation, path_length


@dataclass(frozen=True)
class GaParams:
    population_size: int = 50
    iterations: int = 100
    mutation_rate: float = 0.10
    elite_count: int = 1
    parent_fraction: float = 0.2
    seed: int = 0

    def __post_init__(self):
        if self.population_size < 2:
            raise InvalidArgumentError("population_size must be >= 2")
        if self.iterations < 1:
            raise InvalidArgumentError("iterations must be >= 1")
        if not 0.0 <= self.mutation_rate <= 1.0:
            raise InvalidArgumentError("mutation_rate must lie in [0, 1]")
        if not 1 <= self.elite_count < self.population_size:
            raise InvalidArgumentError("elite_count must satisfy 1 <= elite_count < population_size")
        if not 0.0 < self.parent_fraction <= 1.0:
            raise InvalidArgumentError("parent_fraction must lie in (0, 1]")
        if self.n_parents < 2:
            raise InvalidArgumentError("parent_fraction * population_size must give at least 2 parents")

    @property
    def n_parents(self):
        return min(self.population_size, math.ceil(self.parent_fraction * self.population_size))


@dataclass
class GaResult:
    best_order: List[int]
    best_length: float
    history: List[float] = field(default_factory=list)


def _rng(rng):
    return rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)


def init_population(n_clusters, params: GaParams, rng=None) -> List[List[int]]:
    """``population_size`` uniform random permutations of ``range(n_clusters)``."""
    if n_clusters < 1:
        raise InvalidArgumentError("need at least one cluster")
    rng = _rng(params.seed if rng is None else rng)
    return _init_batch(n_clusters, params.population_size, rng).tolist()


def _init_batch(n, size, rng):
    return rng.permuted(np.tile(np.arange(n), (size, 1)), axis=1)


def _fitness_batch(pop, d):
    if pop.shape[1] < 2:
        return np.zeros(len(pop))
    return d[pop[:, :-1], pop[:, 1:]].sum(axis=1)


def fitness(order, centroids, metric: DistanceMetric) -> float:
    """Open-path length through the centroids; lower is fitter."""
    return path_length(list(centroids), order, metric, closed=False)


def select_parents(population, fitnesses, params: GaParams):
    """Truncation selection: the best ``ceil(parent_fraction * N)`` individuals."""
    if len(population) == 0:
        raise InvalidArgumentError("empty population")
    count = min(len(population), math.ceil(params.parent_fraction * len(population)))
    ranked = np.argsort(np.asarray(fitnesses, dtype=float), kind="stable")
    return [population[i] for i in ranked[:count]]


def _ox1_batch(a, b, starts, ends):
    m, n = a.shape
    pos = np.arange(n)
    in_slice = (pos >= starts[:, None]) & (pos <= ends[:, None])
    taken = np.zeros((m, n), dtype=bool)
    np.put_along_axis(taken, a, in_slice, axis=1)
    keep = ~np.take_along_axis(taken, b, axis=1)
    # kept genes of b (in b's order) go to the free slots (left to right)
    fill = np.take_along_axis(b, np.argsort(~keep, axis=1, kind="stable"), axis=1)
    slots = np.argsort(in_slice, axis=1, kind="stable")
    child = np.empty_like(a)
    np.put_along_axis(child, slots, fill, axis=1)
    child[in_slice] = a[in_slice]
    return child


def ox1_crossover(parent_a, parent_b, rng, cut=None) -> List[int]:
    """Ordered crossover. ``cut=(start, end)`` fixes the inclusive slice taken from ``parent_a``."""
    if len(parent_a) != len(parent_b):
        raise InvalidArgumentError("parents differ in length")
    if sorted(parent_a) != sorted(parent_b):
        raise InvalidArgumentError("parents are not permutations of the same set")
    n = len(parent_a)
    if n == 0:
        return []
    alphabet = sorted(parent_a)
    code = {g: i for i, g in enumerate(alphabet)}
    a = np.array([[code[g] for g in parent_a]])
    b = np.array([[code[g] for g in parent_b]])
    check_permutation(a[0], n)
    if cut is None:
        cut = np.sort(_rng(rng).integers(0, n, size=2))
    start, end = int(cut[0]), int(cut[1])
    if not 0 <= start <= end < n:
        raise InvalidArgumentError(f"bad cut {cut}")
    child = _ox1_batch(a, b, np.array([start]), np.array([end]))[0]
    return [alphabet[i] for i in child]


def _swap_batch(pop, hit, i, j):
    rows = np.flatnonzero(hit)
    ii, jj = i[rows], j[rows]
    tmp = pop[rows, ii].copy()
    pop[rows, ii] = pop[rows, jj]
    pop[rows, jj] = tmp
    return pop


def _mutation_draws(rng, m, n, rate):
    hit = rng.random(m) < rate
    i = rng.integers(0, n, size=m)
    j = (i + rng.integers(1, n, size=m)) % n if n > 1 else i
    return hit & (n > 1), i, j


def swap_mutation(order, mutation_rate, rng) -> List[int]:
    """With probability ``mutation_rate`` swap two distinct random positions."""
    order = list(order)
    hit, i, j = _mutation_draws(_rng(rng), 1, len(order), mutation_rate)
    if len(order) < 2:
        return order
    return _swap_batch(np.array([order]), hit, i, j)[0].tolist()


def ga_optimize(centroids, metric: DistanceMetric, params: GaParams = GaParams(), callback=None) -> GaResult:
    """Evolve a centroid visiting order for exactly ``params.iterations`` generations.

    Each generation keeps the ``elite_count`` best individuals, fills the rest
    with OX1 children of two distinct truncation-selected parents, and applies
    swap mutation to the children only. ``callback(generation, population)`` is
    invoked on every population, the initial one as generation 0.
    """
    pts = [c if isinstance(c, Coordinate) else Coordinate(*c) for c in centroids]
    n = len(pts)
    if n < 1:
        raise InvalidArgumentError("need at least one centroid")
    rng = np.random.default_rng(params.seed)
    d = metric.pairwise(pts)

    pop = _init_batch(n, params.population_size, rng)
    fits = _fitness_batch(pop, d)
    if callback is not None:
        callback(0, pop)
    best_i = int(np.argmin(fits))
    best, best_len = pop[best_i].copy(), fits[best_i]
    history = []

    n_par, n_elite = params.n_parents, params.elite_count
    m = params.population_size - n_elite
    for gen in range(1, params.iterations + 1):
        ranked = np.argsort(fits, kind="stable")
        parents = pop[ranked[:n_par]]
        elites = pop[ranked[:n_elite]]

        ia = rng.integers(0, n_par, size=m)
        ib = (ia + rng.integers(1, n_par, size=m)) % n_par
        cuts = np.sort(rng.integers(0, n, size=(m, 2)), axis=1)
        children = _ox1_batch(parents[ia], parents[ib], cuts[:, 0], cuts[:, 1])
        children = _swap_batch(children, *_mutation_draws(rng, m, n, params.mutation_rate))

        pop = np.vstack([elites, children])
        fits = _fitness_batch(pop, d)
        if callback is not None:
            callback(gen, pop)
        i = int(np.argmin(fits))
        if fits[i] < best_len:
            best, best_len = pop[i].copy(), fits[i]
        history.append(float(best_len))

    order = best.tolist()
    return GaResult(order, fitness(order, pts, metric), history)
