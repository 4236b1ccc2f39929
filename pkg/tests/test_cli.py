import json

import numpy as np
import pytest

from fieldroute.cli import main, parse_seeds
from fieldroute.datasets import data_path, load_istanbul
from fieldroute.geo import DistanceMetric

DATA = str(data_path("istanbul_stations.csv"))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_plan_writes_artifacts(tmp_path, capsys):
    code, out, _ = run(capsys, "plan", "--data", DATA, "--k", "5", "--seed", "0", "--out", str(tmp_path))
    assert code == 0
    for name in ("metrics.json", "route.geojson", "route.html"):
        assert (tmp_path / name).stat().st_size > 0
    doc = json.loads((tmp_path / "metrics.json").read_text())
    opt = doc["rows"][0]
    assert opt["improvement_percent"] > 0
    assert doc["rows"][1]["config_id"] == "Sequential"
    assert "Sequential" in out


def test_plan_missing_file(tmp_path, capsys):
    code, _, err = run(capsys, "plan", "--data", str(tmp_path / "missing.csv"), "--out", str(tmp_path))
    assert code != 0
    assert "not found" in err


def test_invalid_override_reports_key(tmp_path, capsys):
    code, _, err = run(capsys, "plan", "--data", DATA, "--mutation-rate", "1.5", "--out", str(tmp_path))
    assert code == 1 and "mutation_rate" in err


def test_compare_schema_and_seed_rows(tmp_path, capsys):
    code, out, _ = run(capsys, "compare", "--data", DATA, "--out", str(tmp_path))
    assert code == 0
    doc = json.loads((tmp_path / "comparison.json").read_text())
    assert {"reference", "optimized", "improvement_percent"} <= set(doc)
    assert len(doc["runs"]) == 1

    code, out, _ = run(capsys, "compare", "--data", DATA, "--seeds", "0..4", "--out", str(tmp_path))
    doc = json.loads((tmp_path / "comparison.json").read_text())
    assert [r["seed"] for r in doc["runs"]] == [0, 1, 2, 3, 4]
    assert sum(line.strip().startswith("seed") for line in out.splitlines()) == 5


def test_compare_line_never_worse(tmp_path, capsys):
    csv = tmp_path / "line.csv"
    csv.write_text("name,latitude,longitude\n" + "".join(f"p{i},41.0,{29 + 0.01 * i}\n" for i in range(12)))
    code, _, _ = run(capsys, "compare", "--data", str(csv), "--k", "1", "--out", str(tmp_path))
    assert code == 0
    doc = json.loads((tmp_path / "comparison.json").read_text())
    assert doc["improvement_percent"] >= 0


def test_sweep_default_table(tmp_path, capsys):
    code, out, _ = run(capsys, "sweep", "--data", DATA, "--out", str(tmp_path))
    assert code == 0
    rows = json.loads((tmp_path / "sweep.json").read_text())["rows"]
    assert [r["config_id"] for r in rows] == ["1", "2", "3", "4", "Sequential"]
    assert [r["clusters"] for r in rows] == [3, 5, 5, 8, 100]


def test_sweep_empty_spec(tmp_path, capsys):
    spec = tmp_path / "empty.json"
    spec.write_text('{"configs": []}')
    code, _, err = run(capsys, "sweep", "--data", DATA, "--sweep", str(spec), "--out", str(tmp_path))
    assert code == 1 and "no configurations" in err


def test_sweep_rejects_unknown_key(tmp_path, capsys):
    spec = tmp_path / "bad.json"
    spec.write_text('{"configs": [{"id": 1, "clusters": 3}]}')
    code, _, err = run(capsys, "sweep", "--data", DATA, "--sweep", str(spec), "--out", str(tmp_path))
    assert code == 1 and "clusters" in err


def test_sweep_sorts_ids_and_is_deterministic(tmp_path, capsys):
    spec = tmp_path / "s.json"
    spec.write_text(json.dumps({"configs": [{"id": 10, "k": 4}, {"id": 2, "k": 3}]}))
    outs = []
    for d in ("a", "b"):
        code, out, _ = run(capsys, "sweep", "--data", DATA, "--sweep", str(spec), "--out", str(tmp_path / d))
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]
    assert (tmp_path / "a" / "sweep.json").read_bytes() == (tmp_path / "b" / "sweep.json").read_bytes()
    rows = json.loads((tmp_path / "a" / "sweep.json").read_text())["rows"]
    assert [r["config_id"] for r in rows] == ["2", "10", "Sequential"]


def test_export_only_maps(tmp_path, capsys):
    code, _, _ = run(capsys, "export", "--data", DATA, "--out", str(tmp_path))
    assert code == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == ["route.geojson", "route.html"]


def test_matrix_flags(tmp_path, capsys):
    ds = load_istanbul()
    h = DistanceMetric.haversine().pairwise(ds) * 1.25
    np.savetxt(tmp_path / "km.csv", h, delimiter=",")
    np.savetxt(tmp_path / "min.csv", h * 1.7, delimiter=",")
    code, _, err = run(capsys, "plan", "--data", DATA, "--metric", "matrix",
                       "--matrix-file", str(tmp_path / "km.csv"),
                       "--duration-matrix-file", str(tmp_path / "min.csv"), "--out", str(tmp_path))
    assert code == 0, err
    row = json.loads((tmp_path / "metrics.json").read_text())["rows"][0]
    assert row["total_duration_min"] == pytest.approx(1.7 * row["total_distance_km"], rel=1e-6)


def test_parse_seeds():
    assert parse_seeds("0..4") == [0, 1, 2, 3, 4]
    assert parse_seeds("3,1") == [3, 1]
