"""Exit criteria. Each test records one PASS/FAIL line, printed at the end of the run."""
import json
import time

import numpy as np
import pytest

from conftest import as_stations, random_coords
from fieldroute.cli import main
from fieldroute.datasets import data_path, load_istanbul
from fieldroute.ga import GaParams, ga_optimize
from fieldroute.geo import Coordinate, DistanceMetric, path_length
from fieldroute.io import Config
from fieldroute.kmeans import assign_points, kmeans_fit
from fieldroute.pipeline import compute_metrics, improvement_rate, plan_routes, reference_route
from fieldroute.tsp import Tour, brute_force_tour, two_opt_improve

RESULTS = []
DATA = str(data_path("istanbul_stations.csv"))
H = DistanceMetric.haversine()
E = DistanceMetric.euclidean()


def record(n, title, ok, detail):
    RESULTS.append(f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {title} -- {detail}")
    assert ok, detail


def test_c1_improvement_rate_reproduction():
    got = improvement_rate(417.53, 308.49)
    record(1, "improvement rate on published distances", abs(got - 26.12) <= 0.01, f"{got:.4f}% (target 26.12 +/- 0.01)")


def test_c2_ga_matches_brute_force():
    t0 = time.perf_counter()
    rng = np.random.default_rng(20250101)
    hits = total = 0
    for _ in range(20):
        cents = [Coordinate(*p) for p in rng.uniform((40.8, 28.6), (41.2, 29.4), (7, 2))]
        opt = brute_force_tour(cents, E).length
        for seed in range(5):
            r = ga_optimize(cents, E, GaParams(population_size=100, iterations=500, seed=seed))
            hits += abs(r.best_length - opt) <= 1e-9
            total += 1
    elapsed = time.perf_counter() - t0
    ok = hits / total >= 0.90 and elapsed < 30
    record(2, "GA reaches brute-force optimum", ok, f"{hits}/{total} runs optimal, {elapsed:.1f}s")


def test_c3_two_opt_properties():
    t0 = time.perf_counter()
    rng = np.random.default_rng(3)
    bad = 0
    for _ in range(1000):
        members = [Coordinate(*p) for p in rng.uniform(0, 10, (8, 2))]
        start = rng.permutation(8).tolist()
        tour = Tour(start, path_length(members, start, E))
        once = two_opt_improve(tour, members, E)
        twice = two_opt_improve(once, members, E)
        ok = (once.length <= tour.length + 1e-12
              and sorted(once.order) == list(range(8))
              and twice.length == once.length)
        bad += not ok
    elapsed = time.perf_counter() - t0
    record(3, "2-opt monotone, permutation-preserving, idempotent", bad == 0 and elapsed < 10,
           f"{bad} violations in 1000 instances, {elapsed:.1f}s")


def test_c4_kmeans_properties():
    t0 = time.perf_counter()
    rng = np.random.default_rng(4)
    problems = []
    for i in range(100):
        n = int(rng.integers(8, 201))
        k = int(rng.integers(1, 9))
        pts = rng.uniform((40.8, 28.6), (41.2, 29.4), (n, 2))
        fit = kmeans_fit(pts, k, max_iterations=100, rng_seed=i)
        tr = fit.sse_trace
        if any(b > a + 1e-12 for a, b in zip(tr, tr[1:])):
            problems.append(f"dataset {i}: SSE increased")
        if not np.array_equal(fit.labels, assign_points(pts, fit.centroids)):
            problems.append(f"dataset {i}: labels not nearest-centroid")
        if kmeans_fit(pts, n, max_iterations=100, rng_seed=i).sse != 0.0:
            problems.append(f"dataset {i}: k=n SSE non-zero")
    elapsed = time.perf_counter() - t0
    record(4, "K-means SSE trace, nearest labels, k=n", not problems and elapsed < 10,
           f"{len(problems)} problems {problems[:3]}, {elapsed:.1f}s")


def test_c5_istanbul_end_to_end():
    ds = load_istanbul()
    ref = compute_metrics(reference_route(ds, H), H)
    improvements, slowest = [], 0.0
    for seed in range(5):
        t0 = time.perf_counter()
        cfg = Config(k=5, kmeans_max_iterations=10, mutation_rate=0.10, ga_iterations=100, seed=seed)
        route = plan_routes(ds, cfg, H)
        m = compute_metrics(route, H, reference=ref)
        slowest = max(slowest, time.perf_counter() - t0)
        improvements.append(m.improvement_percent)
    below = sum(i > 0 for i in improvements)
    strong = sum(i >= 15 for i in improvements)
    ok = below == 5 and strong >= 4 and slowest < 10
    record(5, "end-to-end beats sequential baseline", ok,
           f"improvements {[round(i, 2) for i in improvements]}%, sequential {ref.total_distance:.2f} km, "
           f"slowest seed {slowest:.2f}s")


def test_c6_global_route_integrity():
    rng = np.random.default_rng(6)
    bad = []
    for i in range(200):
        n = int(rng.integers(1, 121))
        k = min(int(rng.integers(1, 9)), n)
        ds = as_stations(random_coords(rng, n))
        route = plan_routes(ds, Config(k=k, seed=int(rng.integers(10**6)), ga_iterations=40), H)
        perm_ok = sorted(route.flattened) == list(range(n))
        total = path_length(ds, route.flattened, H)
        if not perm_ok or abs(total - sum(route.segment_breakdown)) > 1e-9:
            bad.append(i)
    record(6, "route is a permutation and lengths add up", not bad, f"{len(bad)}/200 failures {bad[:5]}")


def test_c7_plan_determinism(tmp_path, capsys):
    outs = []
    for d in ("a", "b"):
        assert main(["plan", "--data", DATA, "--seed", "7", "--out", str(tmp_path / d)]) == 0
        outs.append(capsys.readouterr().out)
    same = [(tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes()
            for f in ("metrics.json", "route.geojson", "route.html")]
    record(7, "plan output byte-identical across runs", all(same) and outs[0] == outs[1],
           f"metrics/geojson/html identical: {same}, stdout identical: {outs[0] == outs[1]}")


def test_c8_duration_consistency():
    ds = load_istanbul()
    worst = 0.0
    for seed in range(5):
        for k in (1, 3, 5, 8):
            m = compute_metrics(plan_routes(ds, Config(k=k, seed=seed), H), H)
            worst = max(worst, abs(m.total_duration * 0.59122 - m.total_distance))
    record(8, "duration x 0.59122 km/min equals distance", worst <= 1e-9, f"max deviation {worst:.3e} km")


def test_c9_sweep_report_shape(tmp_path, capsys):
    code = main(["sweep", "--data", DATA, "--out", str(tmp_path)])
    capsys.readouterr()
    rows = json.loads((tmp_path / "sweep.json").read_text())["rows"]
    ids = [r["config_id"] for r in rows]
    numeric = [int(i) for i in ids[:-1]]
    ok = (code == 0 and len(rows) == 5 and ids[-1] == "Sequential"
          and numeric == sorted(numeric) and all(r["total_distance_km"] > 0 for r in rows))
    record(9, "sweep emits four configs plus sequential row", ok,
           f"ids {ids}, distances {[round(r['total_distance_km'], 2) for r in rows]}")
