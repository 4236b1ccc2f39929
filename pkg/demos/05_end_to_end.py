"""Full plan against the sequential baseline, plus map export.

Runs the four reference parameter rows on the bundled dataset and writes a
GeoJSON file and an HTML map for the best one into ./demo_out/.
"""
from pathlib import Path

from fieldroute.datasets import load_istanbul, reference_sweep
from fieldroute.geo import DistanceMetric
from fieldroute.io import Config, config_from_mapping, export_geojson, export_html_map
from fieldroute.pipeline import compute_metrics, plan_routes, reference_route, render_text, report_row

stations = load_istanbul()
H = DistanceMetric.haversine()
ref = compute_metrics(reference_route(stations, H), H)

rows, plans = [], {}
for entry in reference_sweep()["configs"]:
    entry = dict(entry)
    cid = entry.pop("id")
    route = plan_routes(stations, config_from_mapping(entry, Config()), H)
    m = compute_metrics(route, H, reference=ref)
    rows.append(report_row(cid, route.n_clusters, m))
    plans[str(cid)] = route
rows.append(report_row("Sequential", len(stations), ref, baseline=True))
print(render_text(rows))

best = min(rows[:-1], key=lambda r: r.total_distance)
route = plans[best.config_id]
out = Path("demo_out")
out.mkdir(exist_ok=True)
export_geojson(route, route.assignment, stations, out / "route.geojson")
export_html_map(route, route.assignment, stations, out / "route.html", [best, rows[-1]])
print(f"config {best.config_id}: segments {len(route.intra_lengths)} intra, "
      f"{len(route.connector_lengths)} connectors; map in {out / 'route.html'}")
