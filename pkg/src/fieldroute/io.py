"""Stations CSV, matrix CSV and config loading; GeoJSON and HTML map export."""
from __future__ import annotations

import csv
import dataclasses
import html
import json
import math
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import (
    ConfigError,
    CoordinateParseError,
    CoordinateRangeError,
    DatasetFormatError,
    EmptyDatasetError,
    InvalidArgumentError,
    InvalidCoordinateError,
)
from .geo import METRIC_ALIASES, Coordinate, Station

HEADER = ["name", "latitude", "longitude"]

PALETTE = ["#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4", "#f032e6", "#9a6324"]
CONNECTOR_COLOR = "#555555"


def cluster_color(c):
    return PALETTE[c % len(PALETTE)]


# -- stations ---------------------------------------------------------------

def load_stations_csv(path):
    """Read a ``name,latitude,longitude`` CSV, keeping row order as station ids."""
    stations = []
    seen = set()
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip().lower() for h in header] != HEADER:
            raise DatasetFormatError(f"expected header {','.join(HEADER)}, got {header}", row=1)
        for row in reader:
            line = reader.line_num
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 3:
                raise DatasetFormatError(f"expected 3 columns, got {len(row)}", row=line)
            name, lat_s, lon_s = (c.strip() for c in row)
            if not name:
                raise DatasetFormatError("empty station name", row=line)
            try:
                lat, lon = float(lat_s), float(lon_s)
            except ValueError:
                raise CoordinateParseError(f"cannot parse coordinate ({lat_s!r}, {lon_s!r})", row=line) from None
            try:
                coord = Coordinate(lat, lon)
            except InvalidCoordinateError as e:
                raise CoordinateRangeError(str(e), row=line) from None
            if name in seen:
                warnings.warn(f"row {line}: duplicate station name {name!r}", stacklevel=2)
            seen.add(name)
            stations.append(Station(len(stations), name, coord))
    if not stations:
        raise EmptyDatasetError("no stations after header")
    return stations


def write_stations_csv(stations, path):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(HEADER)
        for s in stations:
            w.writerow([s.name, repr(s.lat), repr(s.lon)])


def load_matrix_csv(path, n=None) -> np.ndarray:
    """Headerless N x N CSV of non-negative decimals (km or minutes)."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [r for r in csv.reader(fh) if r]
    try:
        m = np.array([[float(x) for x in r] for r in rows], dtype=float)
    except ValueError as e:
        raise InvalidArgumentError(f"{path}: {e}") from None
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidArgumentError(f"{path}: matrix is not square")
    if n is not None and m.shape[0] != n:
        raise InvalidArgumentError(f"{path}: matrix size {m.shape[0]} != station count {n}")
    return m


# -- config -----------------------------------------------------------------

@dataclass(frozen=True)
class Config:
    k: int = 5
    kmeans_max_iterations: int = 10
    mutation_rate: float = 0.10
    ga_iterations: int = 100
    population_size: int = 50
    parent_fraction: float = 0.2
    elite_count: int = 1
    seed: int = 0
    metric: str = "haversine"
    matrix_file: Optional[str] = None
    duration_matrix_file: Optional[str] = None
    speed_kmh: float = 35.4732
    tsp_start_sweep: bool = False

    def __post_init__(self):
        validate_config(self)

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)


CONFIG_KEYS = tuple(f.name for f in dataclasses.fields(Config))


def _int(cfg, key, lo):
    v = getattr(cfg, key)
    if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
        raise ConfigError(key, f"expected an integer, got {v!r}")
    if v < lo:
        raise ConfigError(key, f"must be >= {lo}, got {v}")


def _num(cfg, key):
    v = getattr(cfg, key)
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ConfigError(key, f"expected a finite number, got {v!r}")
    return float(v)


def validate_config(cfg):
    _int(cfg, "k", 1)
    _int(cfg, "kmeans_max_iterations", 1)
    _int(cfg, "ga_iterations", 1)
    _int(cfg, "population_size", 2)
    _int(cfg, "elite_count", 1)
    _int(cfg, "seed", 0)
    if not 0.0 <= _num(cfg, "mutation_rate") <= 1.0:
        raise ConfigError("mutation_rate", f"must lie in [0, 1], got {cfg.mutation_rate}")
    pf = _num(cfg, "parent_fraction")
    if not 0.0 < pf <= 1.0:
        raise ConfigError("parent_fraction", f"must lie in (0, 1], got {pf}")
    if math.ceil(pf * cfg.population_size) < 2:
        raise ConfigError("parent_fraction", "parent_fraction * population_size must give at least 2 parents")
    if cfg.elite_count >= cfg.population_size:
        raise ConfigError("elite_count", "must be smaller than population_size")
    if _num(cfg, "speed_kmh") <= 0:
        raise ConfigError("speed_kmh", "must be positive")
    if cfg.metric not in METRIC_ALIASES and cfg.metric not in METRIC_ALIASES.values():
        raise ConfigError("metric", f"unknown metric {cfg.metric!r}")
    if METRIC_ALIASES.get(cfg.metric, cfg.metric) == METRIC_ALIASES["matrix"] and not cfg.matrix_file:
        raise ConfigError("matrix_file", "required when metric is 'matrix'")
    if not isinstance(cfg.tsp_start_sweep, bool):
        raise ConfigError("tsp_start_sweep", f"expected true/false, got {cfg.tsp_start_sweep!r}")
    for key in ("matrix_file", "duration_matrix_file"):
        v = getattr(cfg, key)
        if v is not None and not isinstance(v, str):
            raise ConfigError(key, f"expected a path string, got {v!r}")


def config_from_mapping(values, base: Config = None) -> Config:
    unknown = sorted(set(values) - set(CONFIG_KEYS))
    if unknown:
        raise ConfigError(unknown[0], "unknown config key")
    base = base or Config()
    return dataclasses.replace(base, **values)


def load_config(path=None, cli_overrides=None) -> Config:
    """Defaults, then the JSON file at ``path``, then non-None ``cli_overrides``."""
    values = {}
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
        if not isinstance(doc, dict):
            raise ConfigError("<root>", "config file must hold a JSON object")
        values.update(doc)
    for key, v in (cli_overrides or {}).items():
        if v is not None:
            values[key] = v
    return config_from_mapping(values)


# -- GeoJSON ----------------------------------------------------------------

def _lonlat(s):
    return [s.lon, s.lat]


def route_geojson(route, assignment, dataset) -> dict:
    """FeatureCollection with one Point per station and one LineString per leg."""
    if sorted(route.flattened) != list(range(len(dataset))):
        raise InvalidArgumentError("route does not cover the dataset exactly once")
    if assignment is not None:
        cluster = {i: int(c) for i, c in enumerate(assignment.labels)}
    else:
        cluster = route.cluster_of()
    rank = {s: r for r, s in enumerate(route.flattened)}

    features = []
    for s in dataset:
        c = cluster[s.id]
        features.append({
            "type": "Feature",
            "geometry": {"type": "Point", "coordinates": _lonlat(s)},
            "properties": {
                "id": s.id,
                "name": s.name,
                "cluster": c,
                "visit_rank": rank[s.id],
                "color": cluster_color(c),
            },
        })
    ids = route.flattened
    for seq, (a, b) in enumerate(zip(ids, ids[1:])):
        same = cluster[a] == cluster[b]
        props = {
            "kind": "intra-cluster" if same else "connector",
            "sequence": seq,
            "from_id": a,
            "to_id": b,
            "from_cluster": cluster[a],
            "to_cluster": cluster[b],
            "color": cluster_color(cluster[a]) if same else CONNECTOR_COLOR,
        }
        features.append({
            "type": "Feature",
            "geometry": {"type": "LineString", "coordinates": [_lonlat(dataset[a]), _lonlat(dataset[b])]},
            "properties": props,
        })
    return {"type": "FeatureCollection", "features": features}


def _dump(doc):
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def export_geojson(route, assignment, dataset, path) -> dict:
    doc = route_geojson(route, assignment, dataset)
    Path(path).write_text(_dump(doc), encoding="utf-8")
    return doc


# -- HTML map ---------------------------------------------------------------

_W, _H, _PAD = 900.0, 640.0, 30.0


def _projector(dataset):
    lats = [s.lat for s in dataset]
    lons = [s.lon for s in dataset]
    lat0, lat1, lon0, lon1 = min(lats), max(lats), min(lons), max(lons)
    kx = math.cos(math.radians((lat0 + lat1) / 2))
    span_x = max((lon1 - lon0) * kx, 1e-9)
    span_y = max(lat1 - lat0, 1e-9)
    scale = min((_W - 2 * _PAD) / span_x, (_H - 2 * _PAD) / span_y)

    def proj(s):
        return _PAD + (s.lon - lon0) * kx * scale, _PAD + (lat1 - s.lat) * scale

    return proj


def _svg(doc, dataset):
    proj = _projector(dataset)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_W:.0f} {_H:.0f}" class="map">']
    out.append(f'<rect width="{_W:.0f}" height="{_H:.0f}" fill="#f7f7f2"/>')
    for f in doc["features"]:
        if f["geometry"]["type"] != "LineString":
            continue
        p = f["properties"]
        (x1, y1), (x2, y2) = proj(dataset[p["from_id"]]), proj(dataset[p["to_id"]])
        dash = ' stroke-dasharray="6 4"' if p["kind"] == "connector" else ""
        out.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
                   f'stroke="{p["color"]}" stroke-width="2"{dash}/>')
    for f in doc["features"]:
        if f["geometry"]["type"] != "Point":
            continue
        p = f["properties"]
        x, y = proj(dataset[p["id"]])
        title = html.escape(f'{p["visit_rank"] + 1}. {p["name"]} (cluster {p["cluster"]})')
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="5" fill="{p["color"]}" stroke="#222">'
                   f'<title>{title}</title></circle>')
    out.append("</svg>")
    return "\n".join(out)


def _legend(doc):
    counts = {}
    for f in doc["features"]:
        if f["geometry"]["type"] == "Point":
            c = f["properties"]["cluster"]
            counts[c] = counts.get(c, 0) + 1
    items = [f'<li><span class="sw" style="background:{cluster_color(c)}"></span>'
             f'Cluster {c} ({counts[c]} stations)</li>' for c in sorted(counts)]
    items.append(f'<li><span class="sw dash" style="border-color:{CONNECTOR_COLOR}"></span>Connector</li>')
    return '<ul class="legend">\n' + "\n".join(items) + "\n</ul>"


def _metrics_table(rows, unit):
    if not rows:
        return ""
    head = ("<tr><th>Config</th><th>Clusters</th>"
            f"<th>Distance ({unit})</th><th>Duration (min)</th><th>Improvement vs sequential (%)</th></tr>")
    body = []
    for r in rows:
        imp = "-" if r.improvement_percent is None else f"{r.improvement_percent:.2f}"
        clusters = f"{r.clusters} (points)" if r.is_baseline else str(r.clusters)
        body.append(f"<tr><td>{html.escape(r.config_id)}</td><td>{clusters}</td>"
                    f"<td>{r.total_distance:.2f}</td><td>{r.total_duration:.2f}</td><td>{imp}</td></tr>")
    return '<table class="metrics">\n' + head + "\n" + "\n".join(body) + "\n</table>"


_PAGE = """<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>{title}</title>
<style>
body {{ font-family: sans-serif; margin: 1em; }}
.map {{ width: 100%; max-width: 900px; border: 1px solid #ccc; }}
.legend {{ list-style: none; padding: 0; }}
.legend li {{ margin: 2px 0; }}
.sw {{ display: inline-block; width: 14px; height: 14px; margin-right: 6px; vertical-align: middle; }}
.sw.dash {{ height: 0; border-top: 2px dashed; }}
.metrics {{ border-collapse: collapse; margin-top: 1em; }}
.metrics td, .metrics th {{ border: 1px solid #bbb; padding: 3px 8px; text-align: right; }}
</style>
</head>
<body>
<h1>{title}</h1>
{svg}
{legend}
{table}
<script type="application/geo+json" id="route-data">
{payload}</script>
</body>
</html>
"""


def render_html_map(route, assignment, dataset, metrics_rows=None, title="Maintenance route") -> str:
    doc = route_geojson(route, assignment, dataset)
    # "</" cannot appear inside a script element; "\/" is a legal JSON escape
    payload = _dump(doc).replace("</", "<\\/")
    return _PAGE.format(
        title=html.escape(title),
        svg=_svg(doc, dataset),
        legend=_legend(doc),
        table=_metrics_table(metrics_rows, route.unit),
        payload=payload,
    )


def export_html_map(route, assignment, dataset, path, metrics_rows=None, title="Maintenance route"):
    text = render_html_map(route, assignment, dataset, metrics_rows, title)
    Path(path).write_text(text, encoding="utf-8")
    return text


def extract_geojson_payload(html_text) -> dict:
    """Parse the GeoJSON embedded by :func:`export_html_map`."""
    start_tag = '<script type="application/geo+json" id="route-data">'
    i = html_text.index(start_tag) + len(start_tag)
    j = html_text.index("</script>", i)
    return json.loads(html_text[i:j])
