"""Command line: reports, exit codes, determinism."""

import json
import subprocess
import sys

import pytest

BASE = [sys.executable, "-m", "fusionsys.cli"]


def run_cli(*args, **kw):
    return subprocess.run(
        BASE + list(args), capture_output=True, text=True, **kw
    )


def test_fusion_report_from_spec_file(tmp_path):
    spec = tmp_path / "s4.json"
    spec.write_text(
        json.dumps(
            {
                "name": "S4",
                "degree": 4,
                "generators": [[[1, 2, 3, 4]], [[1, 2]]],
                "prime": 2,
            }
        ),
        encoding="utf-8",
    )
    out = tmp_path / "report.json"
    dot = tmp_path / "lattice.dot"
    res = run_cli(
        "fusion", "--group", str(spec), "--json-out", str(out), "--dot-out", str(dot)
    )
    assert res.returncode == 0, res.stderr
    report = json.loads(out.read_text())
    assert report["sylow_order"] == 8
    assert report["subgroup_count"] == 10
    assert report["saturated_by_definition"] is True
    assert len(report["subgroups"]) == 10
    text = dot.read_text()
    assert text.startswith("digraph lattice {")
    assert 'label="8"' in text


def test_fusion_entry_shorthand(tmp_path):
    out = tmp_path / "a5.json"
    res = run_cli("fusion", "--entry", "a5_v4", "--json-out", str(out))
    assert res.returncode == 0
    report = json.loads(out.read_text())
    assert report["sylow_order"] == 4
    assert report["constrained"] is True


def test_malformed_spec_exit_code(tmp_path):
    spec = tmp_path / "bad.json"
    spec.write_text("{not json", encoding="utf-8")
    res = run_cli("fusion", "--group", str(spec))
    assert res.returncode == 3


def test_budget_exit_code(tmp_path):
    spec = tmp_path / "s6.json"
    spec.write_text(
        json.dumps(
            {
                "name": "S6",
                "degree": 6,
                "generators": [[[1, 2, 3, 4, 5, 6]], [[1, 2]]],
                "prime": 2,
            }
        ),
        encoding="utf-8",
    )
    res = run_cli("fusion", "--group", str(spec), "--cap-order", "100")
    assert res.returncode == 2


def test_missing_group_argument():
    res = run_cli("fusion")
    assert res.returncode == 3


def test_chi_trivial_config(tmp_path):
    out = tmp_path / "chi.json"
    res = run_cli(
        "chi", "--entry", "s4_d8", "--config", "trivial", "--json-out", str(out)
    )
    assert res.returncode == 0
    report = json.loads(out.read_text())
    assert report["all_ok"] is True
    assert len(report["matrix"]) == 1


def test_chi_family_config(tmp_path):
    out = tmp_path / "chi.json"
    res = run_cli(
        "chi", "--entry", "wreath_a5", "--config", "family", "--json-out", str(out)
    )
    assert res.returncode == 0
    report = json.loads(out.read_text())
    assert report["all_ok"] is True
    assert report["label_group_order"] == 2
    assert len(report["matrix"]) == 2


def test_normalizer_family_mode(tmp_path):
    out = tmp_path / "nj.json"
    res = run_cli(
        "normalizer",
        "--entry", "wreath_a5",
        "--J", "1",
        "--components", "family",
        "--json-out", str(out),
    )
    assert res.returncode == 0
    report = json.loads(out.read_text())
    assert report["all_ok"] is True
    assert report["setwise_group_order"] == 16


def test_normalizer_auto_constrained_exit_4():
    res = run_cli("normalizer", "--entry", "wreath_a5", "--J", "1")
    assert res.returncode == 4
    assert "constrained" in res.stderr


def test_normalizer_auto_with_components(tmp_path):
    out = tmp_path / "nj.json"
    res = run_cli(
        "normalizer",
        "--entry", "a6xa6",
        "--J", "1,2",
        "--components", "auto",
        "--json-out", str(out),
    )
    assert res.returncode == 0
    report = json.loads(out.read_text())
    assert report["component_count"] == 2
    assert report["all_ok"] is True


def test_oracle_block(tmp_path):
    out = tmp_path / "oracle.json"
    res = run_cli("oracle", "--entry", "s4_d8", "--json-out", str(out))
    assert res.returncode == 0
    block = json.loads(out.read_text())
    assert block["saturated_by_definition"]["value"] is True
    assert block["saturated_by_definition"]["provenance"] == "derived-by-oracle"
    assert block["focal_order"]["value"] == 4
