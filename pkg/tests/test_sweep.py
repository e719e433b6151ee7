#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
測試掃描模組：引言表格、網格評估、暴力對照與門檻抽查
"""

import sys
import time
from pathlib import Path

# 添加專案根目錄到 Python 路徑
sys.path.append(str(Path(__file__).parent.parent))

import pytest

from src.bounds import BoundKind, genus_threshold_holds
from src.error_handler import ArgumentError
from src.numeric import Rat
from src.sweep import GridCell, grid, intro_table, oracle_check, theorem_a_spot_check


def test_intro_table_pairs():
    rows = intro_table()
    assert [(row.guaranteed_fibgen, row.prime) for row in rows] == [
        (1, 3), (2, 5), (3, 7), (5, 11), (6, 13), (8, 17), (9, 19),
    ]


def test_intro_table_ratios_and_formulas():
    rows = {row.prime: row for row in intro_table()}
    assert rows[5].asymptotic_ratio == Rat(5, 6)
    assert rows[3].asymptotic_ratio == Rat(3, 4)
    assert rows[19].asymptotic_ratio == Rat(19, 20)
    assert rows[3].source is BoundKind.CONIC_BUNDLE_REMARK
    assert rows[3].exact_threshold_formula == "3*ceil((n+3)/4)"
    assert rows[5].exact_threshold_formula == "5*ceil((n+3)/6)"
    assert rows[5].exact_threshold(3) == 5


def test_intro_table_thresholds_are_theorem_thresholds():
    for row in intro_table():
        assert abs(row.exact_threshold(10 ** 4) / 10 ** 4 - float(row.asymptotic_ratio)) < 0.01
        if row.prime == 3:
            continue
        g = row.guaranteed_fibgen - 1
        for n in range(3, 60):
            d = row.exact_threshold(n)
            assert genus_threshold_holds(n, d, g, row.prime)
            assert not genus_threshold_holds(n, d - 1, g, row.prime)


def test_grid_single_cell():
    cells = grid(3, 3, 5, 5)
    assert len(cells) == 1
    cell = cells[0]
    assert (cell.n, cell.d, cell.best_lower, cell.upper_genus) == (3, 5, 2, 6)
    assert cell.best_kind is BoundKind.DEGENERATION_MIN


def test_grid_vacuous_rectangle_is_row_major():
    cells = grid(3, 4, 1, 2)
    assert [(c.n, c.d) for c in cells] == [(3, 1), (3, 2), (4, 1), (4, 2)]
    assert all(c.best_lower == 0 and c.best_kind is None for c in cells)


def test_grid_cells_respect_upper_bound():
    for cell in grid(3, 12, 1, 40):
        assert isinstance(cell, GridCell)
        assert cell.best_lower <= cell.upper_genus


def test_grid_is_deterministic():
    assert grid(5, 7, 3, 20) == grid(5, 7, 3, 20)


@pytest.mark.parametrize("rectangle", [(2, 5, 1, 5), (5, 4, 1, 5), (3, 5, 0, 5), (3, 5, 6, 5)])
def test_grid_invalid_rectangle(rectangle):
    with pytest.raises(ArgumentError):
        grid(*rectangle)


def test_oracle_agrees_on_small_grid():
    assert oracle_check(3, 5) == []
    assert oracle_check(14, 48) == []


def test_oracle_detects_off_by_one_gamma(monkeypatch):
    monkeypatch.setattr("src.bounds.gamma", lambda n, p, e: p * e + e - n)
    discrepancies = oracle_check(12, 30)
    assert discrepancies
    assert {item.component for item in discrepancies} == {"degeneration"}


def test_theorem_a_spot_check_small_range():
    assert theorem_a_spot_check(40) == []


def test_theorem_a_spot_check_full_range_within_budget():
    start = time.perf_counter()
    assert theorem_a_spot_check(200) == []
    assert time.perf_counter() - start < 1.0
