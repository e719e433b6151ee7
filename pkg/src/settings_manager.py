# -*- coding: utf-8 -*-
"""
Fibering Genus Bound Certifier - 設定管理模組
統一管理 settings.json 的讀取，並與內建預設值深度合併
"""

import copy
import json
from pathlib import Path
from typing import Any, Dict, Optional

from config.config import config
from src.logger import get_logger

logger = get_logger("SettingsManager")

DEFAULT_SETTINGS: Dict[str, Any] = {
    "version": "1.0.0",
    "description": "Fibering Genus Bound Certifier Configuration",
    "settings": {
        "check": {
            "n_max": 120,
            "d_max": 240,
            "random_samples": 10000,
            "random_seed": 20240501,
            "random_n_max": 10000,
            "tate_g_max": 10000,
            "identity_n_max": 100,
            "identity_g_max": 20,
            "identity_p_max": 100,
            "spot_n_max": 200,
            "bertrand_theta_max": 1000000,
            "bertrand_theta_step": 0.37,
        },
        "output": {
            "decimal_places": config.DISPLAY_DECIMALS,
        },
        "grid": {
            "cell_size": 6,
            "margin": 48,
            "legend_width": 120,
        },
        "logging": {
            "level": config.LOG_LEVEL,
            "file_output": False,
        },
    },
}


class SettingsManager:
    """統一設定管理器"""

    def __init__(self, settings_file: Optional[Path] = None):
        self.settings_file = Path(settings_file) if settings_file else config.SETTINGS_FILE
        self._cache: Optional[Dict[str, Any]] = None

    def load_settings(self) -> Dict[str, Any]:
        """載入完整設定（預設值 + settings.json）"""
        if self._cache is not None:
            return self._cache

        settings = copy.deepcopy(DEFAULT_SETTINGS)
        load_error: Optional[Exception] = None
        if self.settings_file.exists():
            try:
                with open(self.settings_file, "r", encoding="utf-8") as f:
                    loaded_settings = json.load(f)
                # 深度合併設定
                self._deep_merge(settings, loaded_settings)
            except (OSError, json.JSONDecodeError) as e:
                load_error = e

        # 先寫入快取：日誌初始化本身也會讀取設定
        self._cache = settings
        if load_error is not None:
            logger.warning(f"載入設定時發生錯誤，改用預設值: {load_error}")
        return settings

    def _section(self, name: str) -> Dict[str, Any]:
        return dict(self.load_settings().get("settings", {}).get(name, {}))

    def get_check_settings(self) -> Dict[str, Any]:
        """取得 check 子命令的測試範圍設定"""
        return self._section("check")

    def get_output_settings(self) -> Dict[str, Any]:
        """取得輸出格式設定"""
        return self._section("output")

    def get_grid_settings(self) -> Dict[str, Any]:
        """取得 SVG 熱圖版面設定"""
        return self._section("grid")

    def get_logging_settings(self) -> Dict[str, Any]:
        """取得日誌設定"""
        return self._section("logging")

    def _deep_merge(self, base: Dict, update: Dict):
        """深度合併字典"""
        for key, value in update.items():
            if key in base and isinstance(base[key], dict) and isinstance(value, dict):
                self._deep_merge(base[key], value)
            else:
                base[key] = value


# 全域設定管理器實例
settings_manager = SettingsManager()
