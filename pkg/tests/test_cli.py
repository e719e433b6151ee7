#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
測試命令列介面：子命令輸出、結束碼與輸出的可重現性
"""

import json
import sys
import time
import xml.etree.ElementTree as ET
from pathlib import Path

# 添加專案根目錄到 Python 路徑
sys.path.append(str(Path(__file__).parent.parent))

from src.cli import main


def test_bound_json(capsys):
    assert main(["bound", "--n", "3", "--d", "5", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["best_lower"] == 2
    assert data["upper_genus"] == 6


def test_bound_human_general_type(capsys):
    assert main(["bound", "--n", "3", "--d", "10"]) == 0
    assert "fib.gen ≥ 11 (GeneralTypeCovGon)" in capsys.readouterr().out


def test_bound_precondition_exit_code(capsys):
    assert main(["bound", "--n", "2", "--d", "5"]) == 2
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "dimension n ≥ 3" in captured.err


def test_malformed_flags_exit_code():
    assert main(["bound", "--n", "three", "--d", "5"]) == 2
    assert main(["bound", "--n", "3"]) == 2
    assert main([]) == 2


def test_svg_only_for_grid():
    assert main(["bound", "--n", "3", "--d", "5", "--format", "svg"]) == 2
    assert main(["table", "--format", "svg"]) == 2


def test_table_csv(capsys):
    assert main(["table", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "fibgen_ge,prime,asymptotic_ratio,exact_threshold"
    assert len(lines) == 8
    assert lines[2].startswith("2,5,5/6,")
    assert lines[7].startswith("9,19,19/20,")


def test_grid_csv_file_is_deterministic(tmp_path):
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    argv = ["grid", "--n-min", "3", "--n-max", "8", "--d-min", "1", "--d-max", "30", "--format", "csv"]
    assert main(argv + ["--out", str(first)]) == 0
    assert main(argv + ["--out", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()
    assert first.read_text(encoding="utf-8").splitlines()[0] == "n,d,best_lower,best_kind,upper_genus,closed_form"


def test_grid_single_cell_row(capsys):
    assert main(["grid", "--n-min", "3", "--n-max", "3", "--d-min", "5", "--d-max", "5", "--format", "csv"]) == 0
    rows = capsys.readouterr().out.splitlines()
    assert len(rows) == 2
    assert rows[1].startswith("3,5,2,")
    assert rows[1].split(",")[4] == "6"


def test_grid_svg_file(tmp_path):
    out = tmp_path / "grid.svg"
    argv = ["grid", "--n-min", "3", "--n-max", "5", "--d-min", "2", "--d-max", "9",
            "--format", "svg", "--out", str(out)]
    assert main(argv) == 0
    root = ET.parse(out).getroot()
    cells = [r for r in root.iter("{http://www.w3.org/2000/svg}rect") if r.get("class") == "cell"]
    assert len(cells) == 3 * 8


def test_grid_invalid_rectangle():
    assert main(["grid", "--n-min", "5", "--n-max", "4", "--d-min", "1", "--d-max", "2"]) == 2


def test_grid_unwritable_path(tmp_path):
    out = tmp_path / "missing" / "grid.csv"
    argv = ["grid", "--n-min", "3", "--n-max", "3", "--d-min", "1", "--d-max", "3",
            "--format", "csv", "--out", str(out)]
    assert main(argv) == 3


def test_threshold(capsys):
    assert main(["threshold", "--n", "3", "--g", "1", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert (data["d_min"], data["p"]) == (5, 5)
    assert data["holds_at_d_min"] is True
    assert data["holds_at_d_min_minus_1"] is False


def test_threshold_g_zero_points_to_conic(capsys):
    assert main(["threshold", "--n", "3", "--g", "0"]) == 2
    assert "conic" in capsys.readouterr().err


def test_check_selected_suites(capsys):
    argv = ["check", "--n-max", "6", "--d-max", "12", "--suite", "oracle", "--suite", "soundness_chain"]
    assert main(argv) == 0
    out = capsys.readouterr().out
    assert "PASS oracle" in out
    assert "2/2 suites passed" in out


def test_check_reports_failure(monkeypatch, capsys):
    monkeypatch.setattr("src.bounds.gamma", lambda n, p, e: p * e + e - n)
    argv = ["check", "--n-max", "10", "--d-max", "20", "--suite", "oracle", "--format", "json"]
    assert main(argv) == 1
    data = json.loads(capsys.readouterr().out)
    assert data["passed"] is False


def test_sieve_limit_override(monkeypatch, capsys):
    monkeypatch.setenv("FIBGEN_SIEVE_LIMIT", "not-a-number")
    assert main(["bound", "--n", "3", "--d", "5001"]) == 2
    assert "FIBGEN_SIEVE_LIMIT" in capsys.readouterr().err


def test_bound_under_small_sieve_limit(monkeypatch, capsys):
    monkeypatch.setenv("FIBGEN_SIEVE_LIMIT", "50")
    assert main(["bound", "--n", "20", "--d", "10", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["best_lower"] == 0


def test_bound_huge_dimension(capsys):
    assert main(["bound", "--n", "5000000", "--d", "10", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert (data["best_lower"], data["best_kind"]) == (0, None)


def test_scaled_check_within_budget(capsys):
    start = time.perf_counter()
    assert main(["check", "--n-max", "50", "--d-max", "100"]) == 0
    elapsed = time.perf_counter() - start
    assert "11/11 suites passed" in capsys.readouterr().out
    assert elapsed < 1.0
