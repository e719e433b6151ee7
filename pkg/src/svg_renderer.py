# -*- coding: utf-8 -*-
"""
Fibering Genus Bound Certifier - SVG 熱圖模組
以 jinja2 模板把網格的最佳下界畫成熱圖（每格一個 rect，固定 13 色調色盤）
"""

from pathlib import Path
from typing import Any, Dict, List, Optional

from jinja2 import Environment, FileSystemLoader, StrictUndefined, select_autoescape

from config.config import config
from src.error_handler import ArgumentError
from src.logger import get_logger
from src.settings_manager import settings_manager
from src.sweep import GridCell

logger = get_logger("SvgRenderer")

TICK_TARGET = 8


def bucket_color(best_lower: int) -> str:
    """best_lower 夾在 [0, SVG_BUCKET_MAX] 後對應到調色盤"""
    bucket = min(max(best_lower, 0), config.SVG_BUCKET_MAX)
    return config.SVG_PALETTE[bucket]


def _ticks(low: int, high: int, cell_size: int, centered: bool = True) -> List[Dict[str, Any]]:
    step = max(1, (high - low + 1) // TICK_TARGET)
    offset = cell_size / 2 if centered else 0
    return [
        {"label": value, "position": (value - low) * cell_size + offset}
        for value in range(low, high + 1, step)
    ]


class GridSvgRenderer:
    """網格熱圖渲染器"""

    def __init__(self, template_path: Optional[Path] = None, grid_settings: Optional[Dict] = None):
        template_path = Path(template_path) if template_path else config.GRID_SVG_TEMPLATE
        self.environment = Environment(
            loader=FileSystemLoader(str(template_path.parent)),
            autoescape=select_autoescape(enabled_extensions=("svg", "j2"), default=True),
            undefined=StrictUndefined,
            trim_blocks=True,
            lstrip_blocks=True,
        )
        self.template = self.environment.get_template(template_path.name)
        settings = grid_settings if grid_settings is not None else settings_manager.get_grid_settings()
        self.cell_size = int(settings.get("cell_size", 6))
        self.margin = int(settings.get("margin", 48))
        self.legend_width = int(settings.get("legend_width", 120))

    def build_context(self, cells: List[GridCell]) -> Dict[str, Any]:
        """計算版面與每格的位置；n 為列（由上而下遞增），d 為行"""
        if not cells:
            raise ArgumentError("網格沒有任何格子，無法繪製熱圖")
        n_min = min(cell.n for cell in cells)
        n_max = max(cell.n for cell in cells)
        d_min = min(cell.d for cell in cells)
        d_max = max(cell.d for cell in cells)
        size = self.cell_size
        plot_width = (d_max - d_min + 1) * size
        plot_height = (n_max - n_min + 1) * size

        rects = [
            {
                "x": (cell.d - d_min) * size,
                "y": (cell.n - n_min) * size,
                "fill": bucket_color(cell.best_lower),
                "n": cell.n,
                "d": cell.d,
                "best_lower": cell.best_lower,
                "kind": cell.best_kind.value if cell.best_kind else "none",
            }
            for cell in cells
        ]
        legend = [
            {
                "y": index * 16,
                "fill": color,
                "label": f"{index}+" if index == config.SVG_BUCKET_MAX else str(index),
            }
            for index, color in enumerate(config.SVG_PALETTE)
        ]
        legend_height = len(legend) * 16
        return {
            "width": 2 * self.margin + plot_width + self.legend_width,
            "height": 2 * self.margin + max(plot_height, legend_height),
            "margin": self.margin,
            "cell_size": size,
            "plot_width": plot_width,
            "plot_height": plot_height,
            "cells": rects,
            "legend": legend,
            "d_ticks": _ticks(d_min, d_max, size),
            "n_ticks": [
                {**tick, "position": tick["position"] + 3}
                for tick in _ticks(n_min, n_max, size)
            ],
            "title": "Lower bounds on fib.gen(X_{n,d}) for very general hypersurfaces",
            "caption": (f"n = {n_min}..{n_max}, d = {d_min}..{d_max}; "
                        "axis ranges and colours are chosen by this tool"),
        }

    def render(self, cells: List[GridCell]) -> str:
        svg = self.template.render(**self.build_context(cells))
        logger.debug(f"🖼️  SVG 熱圖完成: {len(cells)} 格")
        return svg if svg.endswith("\n") else svg + "\n"


def render_grid_svg(cells: List[GridCell]) -> str:
    """以預設模板與 settings.json 的版面設定輸出熱圖"""
    return GridSvgRenderer().render(cells)
