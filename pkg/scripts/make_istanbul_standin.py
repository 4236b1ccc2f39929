"""Regenerate the bundled 100-station Istanbul stand-in dataset.

The first ten rows are the published sample stations. The remaining ninety
are synthetic points scattered around district centres on both sides of the
Bosphorus. Like a hand-maintained station list, rows are grouped by district
(districts in random order, stations within a district in random order), so
the sequential baseline has some locality but is far from optimal.

    python scripts/make_istanbul_standin.py
"""
from pathlib import Path

import numpy as np

from fieldroute.geo import Coordinate, Station
from fieldroute.io import write_stations_csv

SAMPLE = [
    ("Optimum Metro", 40.91091997572458, 29.296356708450354),
    ("Nuvo Dragos", 40.91753623170756, 29.159728927618517),
    ("GESAN", 40.94343325168699, 29.137293687526036),
    ("Up City Flats", 40.93464386474212, 29.215150617826865),
    ("RES", 40.97945767531640, 29.267345683206024),
    ("Ucay Sultanbeyli Branch", 40.95864230497735, 29.289594858306355),
    ("Ritim Istanbul", 40.96024022021866, 29.159271365163416),
    ("Marmara University", 40.91091997572458, 29.187367798227427),
    ("Aydos", 40.96162180648609, 29.219283032946160),
    ("Bostanci", 40.95655584884026, 29.103615717225853),
]

DISTRICTS = [
    ("Kadikoy", 40.990, 29.030),
    ("Uskudar", 41.025, 29.015),
    ("Atasehir", 40.992, 29.124),
    ("Maltepe", 40.935, 29.130),
    ("Kartal", 40.890, 29.190),
    ("Pendik", 40.877, 29.235),
    ("Umraniye", 41.016, 29.124),
    ("Besiktas", 41.043, 29.007),
    ("Sisli", 41.060, 28.987),
    ("Beyoglu", 41.037, 28.977),
    ("Fatih", 41.019, 28.940),
    ("Bakirkoy", 40.980, 28.872),
    ("Bahcelievler", 41.000, 28.860),
    ("Basaksehir", 41.093, 28.802),
    ("Sariyer", 41.167, 29.050),
    ("Esenyurt", 41.034, 28.680),
    ("Beylikduzu", 40.982, 28.640),
]

OUT = Path(__file__).resolve().parents[1] / "src" / "fieldroute" / "data" / "istanbul_stations.csv"


def main(seed=2025, n_synthetic=90, spread=0.012):
    rng = np.random.default_rng(seed)
    counts = {}
    synthetic = []
    for _ in range(n_synthetic):
        name, lat, lon = DISTRICTS[rng.integers(len(DISTRICTS))]
        counts[name] = counts.get(name, 0) + 1
        dlat, dlon = rng.normal(0.0, spread, size=2)
        synthetic.append((f"Synthetic {name} {counts[name]:02d}", round(lat + dlat, 6), round(lon + dlon, 6)))
    by_district = {}
    for row in synthetic:
        by_district.setdefault(row[0].rsplit(" ", 1)[0], []).append(row)
    rows = list(SAMPLE)
    for key in rng.permutation(sorted(by_district)):
        group = by_district[key]
        rows += [group[i] for i in rng.permutation(len(group))]
    stations = [Station(i, n, Coordinate(la, lo)) for i, (n, la, lo) in enumerate(rows)]
    write_stations_csv(stations, OUT)
    print(f"wrote {len(stations)} stations to {OUT}")


if __name__ == "__main__":
    main()
