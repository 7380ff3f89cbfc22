import csv
import json

import pytest

from drinlevel import cli
from drinlevel.config import ConfigError, config_from_dict, default_config, expand_grid, load_config
from drinlevel.experiments import RUNNERS

SMALL = {
    "cases": [
        {"base": [2, 1, 1, 2], "gamma": "Y", "coeffs": [1], "pi": "T", "n": 1},
        {"base": {"p": 2, "m": 2}, "gamma": "w", "coeffs": [0, 1], "pi": "T+1", "n": 1},
        {"base": [3, 1, 1, 2], "gamma": "1+Y", "coeffs": [1], "pi": "quad", "n": 2},
    ]
}


def write(tmp_path, obj, name="cfg.json"):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


@pytest.mark.parametrize("command", ["torsion", "equivalence", "isogeny"])
def test_small_config_passes(tmp_path, command, capsys):
    out = tmp_path / "out.json"
    assert cli.main([command, "--config", write(tmp_path, SMALL), "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert set(doc) == {"payload", "timing"}
    assert doc["payload"]["summary"]["pass"] == 3
    assert len(doc["timing"]["per_case_seconds"]) == 3
    assert "3 pass" in capsys.readouterr().out


def test_tangent_command(tmp_path):
    cfg = {"cases": [{"base": [2, 1, 1, 1], "gamma": "0", "coeffs": [1, 1], "oracle": True}]}
    out = tmp_path / "t.json"
    assert cli.main(["tangent", "--config", write(tmp_path, cfg), "--out", str(out)]) == 0
    rec = json.loads(out.read_text())["payload"]["records"][0]
    assert rec["expected"] == rec["full_search"] == 2


def test_failure_exit_code(tmp_path, monkeypatch, capsys):
    monkeypatch.setitem(RUNNERS, "torsion", lambda case, path: {"status": "fail", "base": "x"})
    assert cli.main(["torsion", "--config", write(tmp_path, SMALL)]) == 1
    assert "FAIL cases[0]" in capsys.readouterr().out


@pytest.mark.parametrize("cfg,needle", [
    ('{"cases": [', "line 1 column"),
    ({"cases": [{"base": [2, 1, 1, 2], "coeffs": [1], "pi": "T"}], "bogus": 1}, "bogus"),
    ({"cases": [{"base": [4, 1, 1, 1], "coeffs": [1], "pi": "T"}]}, "cases[0].base"),
    ({"cases": [{"base": [2, 1, 1, 2], "coeffs": ["Z"], "pi": "T"}]}, "cases[0].coeffs[0]"),
    ({"cases": [{"base": [2, 1, 1, 2], "coeffs": ["Y"], "pi": "T"}]}, "cases[0]"),
    ({"cases": [{"base": [2, 1, 1, 2], "coeffs": [1], "pi": "T^2+1"}]}, "not irreducible"),
    ({"cases": [{"base": [2, 1, 1, 2], "coeffs": [1], "pi": "T", "n": 0}]}, "cases[0].n"),
    ({"cases": SMALL["cases"], "bounds": {"max_card": -1}}, "bounds.max_card"),
    ({}, "neither"),
])
def test_config_errors(tmp_path, capsys, cfg, needle):
    assert cli.main(["equivalence", "--config", write(tmp_path, cfg)]) == 2
    assert needle in capsys.readouterr().err


def test_missing_file_and_bad_args(tmp_path, capsys):
    assert cli.main(["torsion", "--config", str(tmp_path / "nope.json")]) == 2
    assert cli.main(["torsion", "--jobs", "0"]) == 2
    assert cli.main(["nonsense"]) == 2
    assert cli.main(["torsion", "--config", write(tmp_path, SMALL), "--max-card", "0"]) == 2


def test_max_card_skips(tmp_path):
    out = tmp_path / "o.json"
    assert cli.main(["equivalence", "--config", write(tmp_path, SMALL), "--max-card", "2",
                     "--out", str(out)]) == 0
    summary = json.loads(out.read_text())["payload"]["summary"]
    assert summary["skipped"] >= 1 and summary["fail"] == 0


def test_csv_rows(tmp_path):
    path = tmp_path / "o.csv"
    assert cli.main(["torsion", "--config", write(tmp_path, SMALL), "--csv", str(path)]) == 0
    rows = list(csv.DictReader(path.open()))
    assert [r["index"] for r in rows] == ["0", "1", "2"]
    assert json.loads(rows[0]["properties"])["crt"] is True


def test_jobs_keep_order_and_payload(tmp_path):
    cfg = write(tmp_path, SMALL)
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert cli.main(["equivalence", "--config", cfg, "--out", str(a)]) == 0
    assert cli.main(["equivalence", "--config", cfg, "--out", str(b), "--jobs", "2"]) == 0
    pa = json.loads(a.read_text())["payload"]
    pb = json.loads(b.read_text())["payload"]
    assert cli.payload_json(pa) == cli.payload_json(pb)


def test_grid_expansion_order():
    cases = expand_grid({"q": [2], "bases": [[1, 1], [1, 2]], "modules": [[1]], "gammas": ["0", "Y"],
                         "primes": ["T"], "exponents": [1, 2]})
    assert [(c["base"]["k"], c["gamma"], c["n"]) for c in cases] == \
        [(1, "0", 1), (1, "0", 2), (2, "0", 1), (2, "0", 2), (2, "Y", 1), (2, "Y", 2)]


def test_default_configs():
    assert len(load_config(None, "torsion").cases) == 576
    assert len(load_config(None, "equivalence").cases) == 576 + 144
    assert len(load_config(None, "isogeny").cases) == 864
    assert len(load_config(None, "tangent").cases) == 8
    assert default_config("tangent")["cases"][0]["oracle"]
    with pytest.raises(ConfigError):
        config_from_dict([])
