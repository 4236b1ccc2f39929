import numpy as np
import pytest

from fieldroute.geo import Coordinate, Station


def random_coords(rng, n, lat=(40.8, 41.2), lon=(28.6, 29.4)):
    return [Coordinate(a, b) for a, b in zip(rng.uniform(*lat, n), rng.uniform(*lon, n))]


def as_stations(coords):
    return [Station(i, f"S{i}", c) for i, c in enumerate(coords)]


def blobs(rng, centers, per, spread):
    pts = []
    for la, lo in centers:
        pts += [Coordinate(la + dx, lo + dy) for dx, dy in rng.normal(0, spread, (per, 2))]
    return pts


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
        terminalreporter.write_line(line)
