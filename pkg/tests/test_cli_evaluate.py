# tests/test_cli_evaluate.py

"""
Tests for the `evaluate` command.
"""

import json

import pandas as pd


def test_metrics_on_stdout(invoke, corpus_dir):
    result = invoke("evaluate", corpus_dir)
    assert result.exit_code == 0
    metrics = json.loads(result.stdout)
    assert metrics["cases"] == 2
    assert metrics["page"]["Bug"]["precision"] == 1.0
    assert metrics["view"]["Bug"]["recall"] == 1.0


def test_metrics_and_per_case_files(invoke, corpus_dir, tmp_path):
    out = tmp_path / "metrics.json"
    table = tmp_path / "cases.csv"
    result = invoke("evaluate", corpus_dir, "-o", out, "--per-case", table, "-j", 2)
    assert result.exit_code == 0
    assert "Evaluated 2 case(s)" in result.stdout
    assert json.loads(out.read_text())["page"]["Clean"]["support"] == 1
    frame = pd.read_csv(table)
    assert frame["case"].tolist() == ["case-0", "case-1"]
    assert frame["predicted_verdict"].tolist() == ["Clean", "Buggy"]


def test_explicit_labels_file(invoke, corpus_dir, tmp_path):
    labels = tmp_path / "other_labels.json"
    labels.write_text((corpus_dir / "labels.json").read_text())
    (corpus_dir / "labels.json").unlink()
    assert invoke("evaluate", corpus_dir, "--labels", labels).exit_code == 0


def test_label_mismatch_exits_two(invoke, corpus_dir):
    labels = json.loads((corpus_dir / "labels.json").read_text())
    labels["cases"]["case-1"]["buggyViews"] = ["ghost"]
    (corpus_dir / "labels.json").write_text(json.dumps(labels))
    result = invoke("evaluate", corpus_dir)
    assert result.exit_code == 2
    assert "LabelMismatch" in result.stderr
