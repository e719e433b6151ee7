#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
測試輸出模組與 SVG 熱圖：CSV/JSON 格式、原子寫檔、熱圖結構
"""

import json
import sys
import xml.etree.ElementTree as ET
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

# 添加專案根目錄到 Python 路徑
sys.path.append(str(Path(__file__).parent.parent))

import pytest

from config.config import config
from src.bounds import Hypersurface, combined_bound
from src.error_handler import ExitCode, OutputError
from src.output_writer import (
    ThresholdResult, render_grid_csv, render_grid_json, render_report, render_table,
    render_threshold, write_atomic,
)
from src.svg_renderer import GridSvgRenderer, bucket_color, render_grid_svg
from src.sweep import grid, intro_table

SVG_NS = "{http://www.w3.org/2000/svg}"


def test_grid_csv_single_cell():
    text = render_grid_csv(grid(3, 3, 5, 5))
    assert text == (
        "n,d,best_lower,best_kind,upper_genus,closed_form\n"
        "3,5,2,DegenerationMin,6,-0.472954\n"
    )


def test_grid_csv_vacuous_kind_is_none():
    lines = render_grid_csv(grid(3, 3, 1, 1)).splitlines()
    assert lines[1].startswith("3,1,0,none,0,")


def test_grid_json_matches_csv_columns():
    data = json.loads(render_grid_json(grid(3, 3, 5, 6)))
    assert [cell["d"] for cell in data] == [5, 6]
    assert list(data[0]) == ["n", "d", "best_lower", "best_kind", "upper_genus", "closed_form"]


def test_table_csv():
    lines = render_table(intro_table(), "csv").splitlines()
    assert lines[0] == "fibgen_ge,prime,asymptotic_ratio,exact_threshold"
    assert len(lines) == 8
    assert lines[1] == "1,3,3/4,3*ceil((n+3)/4)"
    assert lines[2].startswith("2,5,5/6,")
    assert lines[7].startswith("9,19,19/20,")


def test_report_json_round_trips():
    text = render_report(combined_bound(Hypersurface(3, 5)), "json")
    data = json.loads(text)
    assert data["best_lower"] == 2
    assert data["best_kind"] == "DegenerationMin"
    assert json.dumps(data, indent=2, ensure_ascii=False) + "\n" == text


def test_report_human_lists_every_certificate():
    report = combined_bound(Hypersurface(3, 10))
    lines = render_report(report, "human").splitlines()
    assert len(lines) == len(report.certificates) + 3
    assert "fib.gen ≥ 11 (GeneralTypeCovGon)" in lines[-2]
    assert "fib.gen ≤ 36" in lines[-1]


def test_threshold_render():
    result = ThresholdResult(n=3, g=1, d_min=5, p=5, holds_at_d_min=True, holds_below=False)
    assert "once d ≥ 5 (p = 5)" in render_threshold(result)
    assert json.loads(render_threshold(result, "json"))["d_min"] == 5


def test_write_atomic_replaces_file(tmp_path):
    target = tmp_path / "grid.csv"
    target.write_text("old\n", encoding="utf-8")
    write_atomic(target, "new\n")
    assert target.read_text(encoding="utf-8") == "new\n"
    assert [p.name for p in tmp_path.iterdir()] == ["grid.csv"]


def test_write_atomic_concurrent_writers_do_not_collide(tmp_path):
    target = tmp_path / "grid.csv"
    texts = [f"{i}\n" * 2000 for i in range(8)]
    with ThreadPoolExecutor(max_workers=8) as pool:
        list(pool.map(lambda text: write_atomic(target, text), texts))
    assert target.read_text(encoding="utf-8") in texts
    assert [p.name for p in tmp_path.iterdir()] == ["grid.csv"]


def test_write_atomic_unwritable_path(tmp_path):
    with pytest.raises(OutputError) as excinfo:
        write_atomic(tmp_path / "missing" / "grid.csv", "x\n")
    assert excinfo.value.exit_code == ExitCode.IO


# ==================== SVG ====================

def test_bucket_color_clamps():
    assert bucket_color(-1) == config.SVG_PALETTE[0]
    assert bucket_color(5) == config.SVG_PALETTE[5]
    assert bucket_color(40) == config.SVG_PALETTE[12]


def test_svg_is_well_formed_with_expected_cells():
    cells = grid(3, 6, 1, 12)
    root = ET.fromstring(render_grid_svg(cells).encode("utf-8"))
    rects = list(root.iter(f"{SVG_NS}rect"))
    assert len([r for r in rects if r.get("class") == "cell"]) == 4 * 12
    assert len([r for r in rects if r.get("class") == "legend"]) == 13
    labels = {t.text for t in root.iter(f"{SVG_NS}text")}
    assert {"n", "d"} <= labels


def test_svg_uses_grid_settings():
    renderer = GridSvgRenderer(grid_settings={"cell_size": 10, "margin": 20, "legend_width": 50})
    context = renderer.build_context(grid(3, 4, 1, 3))
    assert context["plot_width"] == 30
    assert context["width"] == 2 * 20 + 30 + 50
