"""Bundled data files."""
import json
from importlib import resources

from .io import load_stations_csv


def data_path(name):
    return resources.files("fieldroute") / "data" / name


def load_istanbul():
    """100 stations: the ten published Istanbul sample rows plus 90 synthetic ones.

    See ``scripts/make_istanbul_standin.py`` for how the synthetic rows were made.
    """
    with resources.as_file(data_path("istanbul_stations.csv")) as p:
        return load_stations_csv(p)


def reference_sweep():
    """The four published parameter rows as a sweep spec dict."""
    return json.loads(data_path("reference_sweep.json").read_text(encoding="utf-8"))
