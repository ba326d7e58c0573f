from __future__ import annotations

import csv
import json

import pytest

from trajadapt.cli import main
from trajadapt.core import load_trajectory
from trajadapt.dataset import default_corpus_path

from conftest import DATA_DIR

FIXTURES = DATA_DIR / "fixtures"


@pytest.fixture()
def io_files(tmp_path):
    scene = tmp_path / "scene.json"
    scene.write_text(json.dumps({"objects": [{"label": "box", "position": [3, 24, 0]}]}))
    traj = tmp_path / "traj.json"
    waypoints = [[0.0, float(y), 0.0, 1.0] for y in range(0, 41)]
    traj.write_text(json.dumps({"waypoints": waypoints}))
    return scene, traj


def test_adapt_auto_approve(io_files, tmp_path, capsys):
    scene, traj = io_files
    out = tmp_path / "adapted.json"
    code = main(
        [
            "adapt",
            "--scene", str(scene),
            "--traj", str(traj),
            "--instruction", "Stop when you reach near the box",
            "--llm", "mock",
            "--fixtures", str(FIXTURES),
            "--fixture-id", "stop_near_box",
            "--out", str(out),
            "--yes",
        ]
    )
    assert code == 0
    adapted = load_trajectory(out)
    assert adapted.waypoints[-1].v == 0.0
    assert "approved" in capsys.readouterr().out


def test_adapt_missing_scene_is_usage_error(tmp_path, capsys):
    code = main(
        [
            "adapt",
            "--scene", str(tmp_path / "missing.json"),
            "--traj", str(tmp_path / "missing2.json"),
            "--instruction", "Go left",
            "--out", str(tmp_path / "out.json"),
            "--yes",
        ]
    )
    assert code == 2
    assert "not found" in capsys.readouterr().err


def test_adapt_failure_exit_code(io_files, tmp_path, capsys):
    scene, traj = io_files
    code = main(
        [
            "adapt",
            "--scene", str(scene),
            "--traj", str(traj),
            "--instruction", "Go left",
            "--llm", "mock",
            "--fixtures", str(FIXTURES),
            "--fixture-id", "no_such_fixture",
            "--out", str(tmp_path / "out.json"),
            "--yes",
        ]
    )
    assert code == 1
    assert "adaptation failed" in capsys.readouterr().err


def test_bad_subcommand_exits_2(capsys):
    assert main(["frobnicate"]) == 2


def test_eval_writes_report_csv_and_figures(tmp_path, capsys):
    report_path = tmp_path / "out" / "report.json"
    figures = tmp_path / "figs"
    code = main(
        [
            "eval",
            "--corpus", str(default_corpus_path()),
            "--llm", "mock",
            "--fixtures", str(FIXTURES),
            "--report", str(report_path),
            "--figures", str(figures),
        ]
    )
    assert code == 0
    report = json.loads(report_path.read_text())
    assert report["success_rate"] == 1.0

    with open(report_path.with_suffix(".csv"), newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == len(report["samples"])
    assert all(row["passed"] == "1" for row in rows)

    pngs = sorted(p.name for p in figures.glob("*.png"))
    assert "success_by_category.png" in pngs
    assert "go_left.png" in pngs
    assert "100.0%" in capsys.readouterr().out


def test_eval_missing_corpus_usage_error(tmp_path, capsys):
    code = main(
        ["eval", "--corpus", str(tmp_path / "nope.jsonl"), "--report", str(tmp_path / "r.json")]
    )
    assert code == 2


def test_render_writes_svg(io_files, tmp_path):
    scene, traj = io_files
    out = tmp_path / "overlay.svg"
    code = main(
        [
            "render",
            "--orig", str(traj),
            "--adapted", str(traj),
            "--scene", str(scene),
            "--out", str(out),
        ]
    )
    assert code == 0
    svg = out.read_text()
    assert svg.count("<polyline") == 2
