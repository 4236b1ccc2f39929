"""Command-line entry point: ``fieldroute {plan,compare,sweep,export}``."""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from . import datasets
from .errors import ConfigError, FieldRouteError
from .io import config_from_mapping, export_geojson, export_html_map, load_config, load_stations_csv
from .pipeline import (
    build_duration_model,
    build_metric,
    compute_metrics,
    plan_routes,
    reference_route,
    render_json,
    render_text,
    report_row,
)

# flag dest -> Config key
OVERRIDES = {
    "k": "k",
    "kmeans_iters": "kmeans_max_iterations",
    "mutation_rate": "mutation_rate",
    "ga_iters": "ga_iterations",
    "population": "population_size",
    "parent_fraction": "parent_fraction",
    "elite_count": "elite_count",
    "seed": "seed",
    "metric": "metric",
    "matrix_file": "matrix_file",
    "duration_matrix_file": "duration_matrix_file",
    "speed_kmh": "speed_kmh",
    "tsp_start_sweep": "tsp_start_sweep",
}


def parse_seeds(text):
    """``"0..4"`` (inclusive) or ``"1,3,7"``."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            seeds = list(range(int(lo), int(hi) + 1))
        else:
            seeds = [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad seed list {text!r}") from None
    if not seeds or min(seeds) < 0:
        raise argparse.ArgumentTypeError(f"bad seed list {text!r}")
    return seeds


def _common(p):
    p.add_argument("--data", required=True, help="stations CSV (name,latitude,longitude)")
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--out", default="out", help="output directory")
    p.add_argument("--k", type=int)
    p.add_argument("--kmeans-iters", type=int)
    p.add_argument("--mutation-rate", type=float)
    p.add_argument("--ga-iters", type=int)
    p.add_argument("--population", type=int)
    p.add_argument("--parent-fraction", type=float)
    p.add_argument("--elite-count", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--metric", choices=["euclidean", "haversine", "matrix"])
    p.add_argument("--matrix-file")
    p.add_argument("--duration-matrix-file")
    p.add_argument("--speed-kmh", type=float)
    p.add_argument("--tsp-start-sweep", action="store_true", default=None)


def build_parser():
    parser = argparse.ArgumentParser(prog="fieldroute", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", help="plan a route and write metrics, GeoJSON and HTML map")
    _common(p)
    p = sub.add_parser("compare", help="compare planned routes against the sequential baseline")
    _common(p)
    p.add_argument("--seeds", type=parse_seeds, help="seed range like 0..4 or list like 0,3,5")
    p = sub.add_parser("sweep", help="run several configurations and summarise them with the sequential baseline")
    _common(p)
    p.add_argument("--sweep", help="sweep spec JSON (default: the four bundled reference rows)")
    p = sub.add_parser("export", help="write only the GeoJSON and HTML map")
    _common(p)
    return parser


def _config(args):
    overrides = {key: getattr(args, dest) for dest, key in OVERRIDES.items()}
    return load_config(args.config, overrides)


def _write(out_dir, name, text):
    path = Path(out_dir) / name
    path.write_text(text, encoding="utf-8")
    return path


def _baseline(dataset, metric, durations):
    ref = reference_route(dataset, metric)
    return ref, compute_metrics(ref, metric, durations)


def _plan_rows(dataset, config, metric, durations, config_id="1"):
    route = plan_routes(dataset, config, metric)
    _, ref_m = _baseline(dataset, metric, durations)
    m = compute_metrics(route, metric, durations, reference=ref_m)
    rows = [report_row(config_id, route.n_clusters, m), report_row("Sequential", len(dataset), ref_m, baseline=True)]
    return route, m, ref_m, rows


def cmd_plan(args, dataset, config, out):
    metric, durations = build_metric(config), build_duration_model(config)
    route, _, _, rows = _plan_rows(dataset, config, metric, durations)
    _write(out, "metrics.txt", render_text(rows, route.unit))
    _write(out, "metrics.json", render_json(rows, route.unit, config=dataclasses.asdict(config)))
    export_geojson(route, route.assignment, dataset, Path(out) / "route.geojson")
    export_html_map(route, route.assignment, dataset, Path(out) / "route.html", rows)
    print(render_text(rows, route.unit), end="")
    return 0


def cmd_export(args, dataset, config, out):
    metric, durations = build_metric(config), build_duration_model(config)
    route, _, _, rows = _plan_rows(dataset, config, metric, durations)
    export_geojson(route, route.assignment, dataset, Path(out) / "route.geojson")
    export_html_map(route, route.assignment, dataset, Path(out) / "route.html", rows)
    print(f"wrote {Path(out) / 'route.geojson'} and {Path(out) / 'route.html'}")
    return 0


def _metrics_dict(m):
    return {
        f"total_distance_{m.unit}": round(m.total_distance, 6),
        "total_duration_min": round(m.total_duration, 6),
    }


def cmd_compare(args, dataset, config, out):
    metric, durations = build_metric(config), build_duration_model(config)
    seeds = args.seeds if args.seeds else [config.seed]
    _, ref_m = _baseline(dataset, metric, durations)
    rows = [report_row("Sequential", len(dataset), ref_m, baseline=True)]
    runs = []
    for seed in seeds:
        cfg = config.replace(seed=seed)
        route = plan_routes(dataset, cfg, metric)
        m = compute_metrics(route, metric, durations, reference=ref_m)
        rows.append(report_row(f"seed {seed}", route.n_clusters, m))
        runs.append({"seed": seed, "clusters": route.n_clusters, "optimized": _metrics_dict(m),
                     "improvement_percent": round(m.improvement_percent, 6)})
    doc = {
        "baseline": "vs sequential baseline",
        "reference": _metrics_dict(ref_m),
        "optimized": runs[0]["optimized"],
        "improvement_percent": runs[0]["improvement_percent"],
        "runs": runs,
    }
    _write(out, "comparison.txt", render_text(rows, ref_m.unit))
    _write(out, "comparison.json", json.dumps(doc, indent=2) + "\n")
    print(render_text(rows, ref_m.unit), end="")
    return 0


def load_sweep(path):
    if path is None:
        doc = datasets.reference_sweep()
    else:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    entries = doc.get("configs") if isinstance(doc, dict) else doc
    if not entries:
        raise ConfigError("configs", "sweep spec lists no configurations")
    ids = []
    for i, e in enumerate(entries):
        if not isinstance(e, dict):
            raise ConfigError("configs", f"entry {i} is not an object")
        ids.append(e.get("id", i + 1))
    if len(set(map(str, ids))) != len(ids):
        raise ConfigError("id", "duplicate config ids in sweep spec")
    return entries


def _id_key(cid):
    return (0, int(cid), "") if str(cid).lstrip("-").isdigit() else (1, 0, str(cid))


def cmd_sweep(args, dataset, config, out):
    entries = load_sweep(args.sweep)
    metric, durations = build_metric(config), build_duration_model(config)
    _, ref_m = _baseline(dataset, metric, durations)
    rows = []
    for i, entry in enumerate(entries):
        entry = dict(entry)
        cid = entry.pop("id", i + 1)
        cfg = config_from_mapping(entry, base=config)
        route = plan_routes(dataset, cfg, metric)
        m = compute_metrics(route, metric, durations, reference=ref_m)
        rows.append(report_row(cid, route.n_clusters, m))
    rows.sort(key=lambda r: _id_key(r.config_id))
    rows.append(report_row("Sequential", len(dataset), ref_m, baseline=True))
    _write(out, "sweep.txt", render_text(rows, ref_m.unit))
    _write(out, "sweep.json", render_json(rows, ref_m.unit))
    print(render_text(rows, ref_m.unit), end="")
    return 0


COMMANDS = {"plan": cmd_plan, "compare": cmd_compare, "sweep": cmd_sweep, "export": cmd_export}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        config = _config(args)
        dataset = load_stations_csv(args.data)
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        return COMMANDS[args.command](args, dataset, config, out)
    except FileNotFoundError as e:
        print(f"error: file not found: {e.filename}", file=sys.stderr)
    except (FieldRouteError, OSError, ValueError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
    return 1


if __name__ == "__main__":
    sys.exit(main())
