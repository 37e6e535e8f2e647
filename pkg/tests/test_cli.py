import json

import pytest

from extricat import io
from extricat.cli import run
from extricat.config import Caps, ConfigError, SessionConfig, fixture_path, parse_window


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_catalog_rows(capsys):
    code, out, _ = call(capsys, "catalog", "--spec", "a3_left", "--json")
    rep = json.loads(out)
    assert code == 0 and len(rep["indecomposables"]) == 6
    code, out, _ = call(capsys, "catalog", "--spec", "a1", "--json")
    assert len(json.loads(out)["indecomposables"]) == 1


def test_catalog_dot(capsys, tmp_path):
    path = tmp_path / "g.dot"
    code, _, _ = call(capsys, "catalog", "--spec", "a3_left", "--dot", str(path))
    text = path.read_text()
    assert code == 0 and text.startswith("digraph catalog {")
    edges = sorted(l.strip() for l in text.splitlines() if "->" in l)
    assert len(edges) == 6  # arrows of the Auslander-Reiten quiver of A3
    assert '"S1" -> "P2";' in edges and '"I2" -> "S3";' in edges


def test_catalog_spec_path(capsys):
    code, out, _ = call(capsys, "catalog", "--spec", str(fixture_path("a3_right")))
    assert code == 0 and "6 indecomposables" in out


def test_malformed_spec(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": ["1"],\n  "arrows": [')
    code, _, err = call(capsys, "catalog", "--spec", str(bad))
    assert code == 2 and "line 2" in err


def test_missing_spec(capsys):
    code, _, err = call(capsys, "catalog")
    assert code == 2 and "--spec" in err
    code, _, err = call(capsys, "catalog", "--spec", "/nonexistent.json")
    assert code == 2


def test_filt(capsys):
    code, out, _ = call(capsys, "filt", "--spec", "a3_left", "--x", "S2,S3", "--json")
    assert code == 0 and json.loads(out)["members"] == {"S2": 1, "S3": 1, "I2": 2}
    code, out, _ = call(capsys, "filt", "--spec", "a3_left", "--json")
    assert json.loads(out)["members"] == {"0": 0}
    code, out, _ = call(capsys, "filt", "--spec", "a3_left", "--x", "S1,S2,S3", "--json")
    assert len(json.loads(out)["members"]) == 6


def test_filt_unknown_label(capsys):
    code, _, err = call(capsys, "filt", "--spec", "a3_left", "--x", "S7")
    assert code == 2 and "unknown catalog label" in err


def test_filt_derived(capsys):
    code, out, _ = call(capsys, "filt", "--spec", "a3_right", "--window=-3:2", "--x", "P1,S1[-1],S2[-1],S3[-1]", "--json")
    assert code == 0 and len(json.loads(out)["members"]) == 9


def test_semibricks(capsys):
    code, out, _ = call(capsys, "semibricks", "--spec", "a2", "--json")
    rep = json.loads(out)
    assert rep["count"] == 5 and rep["simple_count"] == 5
    code, out, _ = call(capsys, "semibricks", "--spec", "a1", "--json")
    assert [r["X"] for r in json.loads(out)["semibricks"]] == [[], ["S1"]]
    code, out, _ = call(capsys, "semibricks", "--spec", "a3_left", "--json")
    rows = json.loads(out)["semibricks"]
    assert {"X": ["S2", "S3"], "simple": True} in rows


def test_semibricks_guard(capsys):
    code, _, err = call(capsys, "semibricks", "--spec", "a3_right", "--window=-3:2")
    assert code == 2 and "limited" in err


def test_verify_suites(capsys):
    assert call(capsys, "verify", "example-4.6")[0] == 0
    code, out, _ = call(capsys, "verify", "bijection", "--spec", "a2")
    assert code == 0 and "5 simple semibricks <-> 5" in out
    code, out, _ = call(capsys, "verify", "example-5.9", "--json")
    rep = json.loads(out)
    assert code == 3 and rep["violations"] == [] and len(rep["skipped_window"]) == 12
    assert call(capsys, "verify", "cotorsion", "--spec", "a3_left")[0] == 0
    assert call(capsys, "verify", "lemmas", "--spec", "a2")[0] == 0
    assert call(capsys, "verify", "axioms", "--spec", "a2", "--samples", "30")[0] == 0


def test_verify_cotorsion_other_x(capsys):
    code, out, _ = call(capsys, "verify", "cotorsion", "--spec", "a3_left", "--x", "S2,S3", "--json")
    assert code == 0 and json.loads(out)["S_P"] == ["S2", "S3"]


def test_verify_violation_exit_code(capsys):
    # {S2, I2} is not a semibrick: the correspondence verifier reports it
    code, out, _ = call(capsys, "verify", "cotorsion", "--spec", "a3_left", "--x", "S2,I2", "--json")
    assert code == 1 and json.loads(out)["violations"]


def test_usage_errors(capsys):
    assert call(capsys, "verify", "nonsense")[0] == 2
    assert call(capsys, "filt", "--spec", "a3_left", "--window", "3:1")[0] == 2
    assert call(capsys, "filt", "--spec", "a3_left", "--p", "4")[0] == 2
    assert call(capsys)[0] == 2


def test_reports_are_deterministic(capsys):
    outs = [call(capsys, "verify", "bijection", "--spec", "a3_left", "--json")[1] for _ in range(2)]
    strip = [json.loads(o) for o in outs]
    for r in strip:
        r.pop("seconds")
    assert strip[0] == strip[1]
    a = call(capsys, "catalog", "--spec", "a3_left", "--json")[1]
    b = call(capsys, "catalog", "--spec", "a3_left", "--json")[1]
    assert a == b


def test_config_validation():
    with pytest.raises(ConfigError):
        SessionConfig(p=6)
    with pytest.raises(ConfigError):
        SessionConfig(window=(2, 2))
    with pytest.raises(ConfigError):
        Caps(ext_enum=0)
    with pytest.raises(ConfigError):
        SessionConfig(backend="sheaves")
    with pytest.raises(ConfigError):
        parse_window("1-3")
    assert parse_window("-3:2") == (-3, 2)


def test_config_builds_backends():
    M = SessionConfig(spec="a3_left").category()
    assert M.name == "module" and len(M.universe) == 6
    D = SessionConfig(spec="a3_right", backend="derived", window=(-1, 1)).category()
    assert D.name == "derived" and len(D.universe) == 18
    assert SessionConfig(spec="a3_left", p=3).category().p == 3


def test_object_json(d3):
    X = d3.parse("S3[-1]+P1")
    data = io.dobject(d3, X)
    assert data == [["S3", -1], ["P1", 0]] or data == [["P1", 0], ["S3", -1]]
    assert io.parse_dobject(d3, json.loads(json.dumps(data))) == X
    conf = d3.realize_d(d3.parse("S1"), d3.parse("S2"), [1])
    js = io.conflation_json(d3, conf)
    assert set(js) == {"A", "B", "C", "class_coords"} and js["class_coords"] == [1]
    with pytest.raises(ValueError):
        io.parse_dobject(d3, [["S1"]])
