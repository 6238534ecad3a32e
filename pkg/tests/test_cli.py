import csv
import json

import pytest

from phototopo.cli import ExperimentConfig, list_models, main
from phototopo.errors import ConfigError


def run(argv, capsys):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr()


def write_config(tmp_path, data, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return path


def test_models_catalog(capsys):
    code, out = run(["--task", "models"], capsys)
    assert code == 0
    catalog = json.loads(out.out)
    assert catalog["qwz"]["u"] == 1.2
    assert catalog["stacked_hn"]["J"] == 0.5
    assert catalog == list_models()


def test_table1_prints_one_line_per_quadrant(tmp_path, capsys):
    code, out = run(["--task", "table1", "--out", tmp_path], capsys)
    assert code == 0
    lines = out.out.strip().splitlines()
    assert len(lines) == 4 and all(line.endswith("PASS") for line in lines)
    doc = json.loads((tmp_path / "results.json").read_text())
    assert doc["results"]["all_pass"]


def test_invariant_task_serializes_complex_numbers(tmp_path, capsys):
    cfg = {"task": "invariant", "model": {"name": "hn"}, "layout": {"omega_e": {"re": 0.0, "im": -1.0}, "g": 0.1}}
    code, _ = run(["--config", write_config(tmp_path, cfg), "--out", tmp_path / "o"], capsys)
    assert code == 0
    res = json.loads((tmp_path / "o" / "results.json").read_text())["results"]
    assert res["bath"]["value"] == 1 and res["mediated"]["value"] == -1
    assert res["bath"]["base_energy"] == {"re": 0.0, "im": -1.0}
    assert {"kind", "value", "raw", "grid_m", "base_energy"} <= set(res["bath"])


def test_classify_task_reports_labels_and_residuals(tmp_path, capsys):
    code, _ = run(["--task", "classify", "--model", "ssh", "--out", tmp_path], capsys)
    assert code == 0
    res = json.loads((tmp_path / "results.json").read_text())["results"]
    assert res["bath"]["label"] == "BDI" and res["mediated"]["label"] == "BDI"
    assert res["predicted"] == "BDI"
    assert all(r["residual"] < 1e-8 for r in res["bath"]["residuals"])


def test_mediate_task_with_realspace_writes_csv(tmp_path, capsys):
    cfg = {
        "task": "mediate",
        "model": {"name": "ssh", "params": {"v": 1.0, "w": 1.5}},
        "layout": {"omega_e": 0.0, "g": 0.1, "d": 4},
        "realspace": {"n_cells": 30, "bc": "periodic"},
    }
    code, _ = run(["--config", write_config(tmp_path, cfg), "--out", tmp_path / "m"], capsys)
    assert code == 0
    with open(tmp_path / "m" / "spectra.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert list(rows[0]) == ["index", "re", "im", "sector", "score"]
    assert sum(r["sector"] == "ATOMIC" for r in rows) == 44
    res = json.loads((tmp_path / "m" / "results.json").read_text())["results"]
    assert res["certificate"]["passed"]


def test_figure_three_outputs(tmp_path, capsys):
    code, _ = run(["--task", "figure", "--figure", "fig3", "--out", tmp_path], capsys)
    assert code == 0
    assert {p.name for p in tmp_path.iterdir()} == {"results.json", "spectra.csv", "profiles.csv", "plot_fig3.py"}
    script = (tmp_path / "plot_fig3.py").read_text()
    assert "profiles.csv" in script and "phototopo" not in script
    res = json.loads((tmp_path / "results.json").read_text())["results"]
    assert res["photonic_argmax_site"] == 19.0
    assert res["atomic_argmax_site"] == res["atomic_sites"][0]


def test_results_are_byte_identical_and_round_trip(tmp_path, capsys):
    run(["--figure", "fig1", "--out", tmp_path / "a"], capsys)
    run(["--figure", "fig1", "--out", tmp_path / "a2"], capsys)
    first = (tmp_path / "a" / "results.json").read_text()
    assert first.replace("/a2", "/a") == (tmp_path / "a2" / "results.json").read_text().replace("/a2", "/a")
    # re-run from the emitted metadata block into the same directory name
    code, _ = run(["--config", tmp_path / "a" / "results.json", "--out", tmp_path / "a"], capsys)
    assert code == 0
    assert (tmp_path / "a" / "results.json").read_text() == first


@pytest.mark.parametrize(
    "cfg",
    [
        {"task": "invariant", "bogus": 1},
        {"task": "invariant", "model": {"name": ""}},
        {"task": "invariant", "model": {"name": "kitaev"}},
        {"task": "invariant", "model": {"name": "ssh", "params": {"t": 1}}},
        {"task": "invariant", "model": {"name": "ssh", "colour": "red"}},
        {"task": "figure", "figure": {"name": "fig9"}},
        {"task": "figure", "figure": {"name": "fig3", "params": {"L": 4}}},
        {"task": "mediate", "model": {"name": "ssh"}, "realspace": {"bc": "twisted"}},
        {"task": "invariant", "model": {"name": "ssh"}, "grid": 4},
        {"task": "dance"},
    ],
)
def test_invalid_configs_exit_with_code_2(tmp_path, capsys, cfg):
    code, out = run(["--config", write_config(tmp_path, cfg), "--out", tmp_path], capsys)
    assert code == 2
    assert json.loads(out.err)["error"] == "config"


def test_bad_layout_is_a_config_error(tmp_path, capsys):
    cfg = {"task": "invariant", "model": {"name": "ssh"}, "layout": {"pi": [1, 2]}}
    code, _ = run(["--config", write_config(tmp_path, cfg), "--out", tmp_path], capsys)
    assert code == 2


def test_domain_errors_exit_with_code_1(tmp_path, capsys):
    cfg = {"task": "invariant", "model": {"name": "hn"}, "layout": {"omega_e": 0.0}}
    code, out = run(["--config", write_config(tmp_path, cfg), "--out", tmp_path], capsys)
    assert code == 1
    report = json.loads(out.err)
    assert report["error"] == "domain" and report["type"] == "PointGapClosed"
    assert report["module"] == "phototopo.invariants"


def test_config_dataclass_round_trip():
    data = {"task": "figure", "figure": {"name": "fig6", "params": {"g": 0.1}}, "seed": 3}
    cfg = ExperimentConfig.from_dict(data)
    assert ExperimentConfig.from_dict(cfg.to_dict()).to_dict() == cfg.to_dict()
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"task": "figure"})
