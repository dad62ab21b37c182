import csv
import io
import json

import pytest

from jgrass.cli import main


def run(args):
    buf = io.StringIO()
    code = main(args, stream=buf)
    return code, json.loads(buf.getvalue())


def strip_timing(obj):
    if isinstance(obj, dict):
        return {k: strip_timing(v) for k, v in obj.items() if not k.endswith("_ms")}
    if isinstance(obj, list):
        return [strip_timing(v) for v in obj]
    return obj


def test_theorem1_example():
    code, rep = run(["verify", "theorem1", "--family", "A", "--n", "3", "--p", "2", "--k", "2",
                     "--a", "1", "--J", "1,3"])
    assert code == 0 and rep["proper"] is True
    assert rep["closure"]["closure_size"] == 665 and rep["schema"] == 1


def test_omega_subspace_example():
    code, rep = run(["verify", "omega-subspace", "--family", "D", "--n", "3", "--p", "2", "--k", "2",
                     "--a", "1", "--J", "+,-"])
    assert code == 0 and rep["violations"] == 0


def test_not_a_proper_subfield():
    code, rep = run(["verify", "theorem1", "--a", "2", "--k", "2"])
    assert code == 2 and "proper subfield" in rep["error"]


@pytest.mark.parametrize("args", [["verify", "nope"], ["bogus"], ["verify", "theorem1", "--p", "4"]])
def test_usage_errors(args):
    code, _ = (main(args, stream=io.StringIO()), None)
    assert code == 2


def test_reproducible_reports():
    args = ["verify", "line-rationality", "--family", "D", "--n", "4", "--J", "1,+,-", "--samples", "50",
            "--seed", "3"]
    _, a = run(args)
    _, b = run(args)
    assert strip_timing(a) == strip_timing(b)
    assert a["params"]["rng_seed"] == 3


def test_budget_exit_code(monkeypatch):
    monkeypatch.setenv("JGRASS_TIME_LIMIT", "0")
    code, rep = run(["closure", "--family", "D", "--n", "4", "--J", "+,-"])
    assert code == 2 and rep["verdict"] is None
    assert rep["params"]["time_limit"] == 0


def test_census_csv(tmp_path):
    path = tmp_path / "census.csv"
    code, rep = run(["omega-census", "--family", "A", "--n", "3", "--csv", str(path)])
    assert code == 0
    code, _ = run(["omega-census", "--family", "D", "--n", "3", "--J", "+,-", "--csv", str(path)])
    rows = list(csv.DictReader(path.open()))
    assert [r["omega"] for r in rows] == ["665", "665"]
    assert rows[0] == {"spec": "Gr_{1,3}(A_3(GF(4)))", "a": "1", "points": "1785", "omega": "665",
                       "rational_points": "105"}


def test_census_budget():
    code, rep = run(["omega-census", "--family", "D", "--n", "4", "--J", "+,-", "--max-points", "1000"])
    assert code == 2 and "budget" in rep["error"]


def test_thin_commands():
    assert run(["embed-dim"])[1]["embedding_dim"] == 15
    code, rep = run(["witness", "--family", "A", "--n", "4", "--J", "1,3", "--j1", "1", "--j2", "3"])
    assert code == 0 and rep["in_omega"] is False
    code, rep = run(["klein"])
    assert code == 0 and rep["closures_correspond"]
    code, rep = run(["genrank", "--seed", "0"])
    assert code == 0 and rep["greedy_size"] == 15


def test_verify_all_smoke():
    code, rep = run(["verify", "all", "--tier", "smoke"])
    assert code == 0
    assert {r["criterion"] for r in rep["results"]} == set(range(1, 12))
