# -*- coding: utf-8 -*-
"""
Fibering Genus Bound Certifier - 配置管理模組
管理路徑、數值容差、輸出格式、SVG 調色盤與篩法上限等設定
"""

import os
from pathlib import Path


class Config:
    """配置管理類"""

    # ==================== 基本路徑設定 ====================
    PROJECT_ROOT = Path(__file__).parent.parent
    LOGS_DIR = PROJECT_ROOT / "logs"
    ASSETS_DIR = PROJECT_ROOT / "assets"
    TEMPLATES_DIR = ASSETS_DIR / "templates"
    SETTINGS_FILE = PROJECT_ROOT / "config" / "settings.json"

    # SVG 熱圖模板
    GRID_SVG_TEMPLATE = TEMPLATES_DIR / "grid_heatmap.svg.j2"

    # ==================== 數值設定 ====================
    FLOAT_TOLERANCE = 1e-9      # 所有封閉公式比較的絕對容差
    DISPLAY_DECIMALS = 6        # 浮點下界顯示位數（一律向下捨入）

    # ==================== 質數篩法設定 ====================
    SIEVE_LIMIT_ENV = "FIBGEN_SIEVE_LIMIT"  # 唯一讀取的環境變數
    DEFAULT_SIEVE_CAP = 10_000_000          # 預設篩法上限

    # ==================== SVG 熱圖設定 ====================
    SVG_BUCKET_MAX = 12  # best_lower 夾在 [0, 12]
    SVG_PALETTE = (
        "#f7fbff", "#deebf7", "#c6dbef", "#9ecae1", "#6baed6",
        "#4292c6", "#2171b5", "#08519c", "#08306b", "#3f007d",
        "#54278f", "#6a51a3", "#807dba",
    )

    # ==================== 日誌設定 ====================
    LOG_LEVEL = "WARNING"
    LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    CONSOLE_LOG_FORMAT = "%(levelname)s - %(message)s"  # 無時間戳，保持 stderr 可重現
    LOG_FILE_PREFIX = "execution_"

    # ==================== 工具方法 ====================
    @classmethod
    def get_sieve_cap(cls) -> int:
        """
        取得質數篩法上限

        讀取 FIBGEN_SIEVE_LIMIT（正整數）；未設定時使用 DEFAULT_SIEVE_CAP。

        Raises:
            ConfigurationError: 環境變數不是正整數
        """
        raw = os.environ.get(cls.SIEVE_LIMIT_ENV)
        if raw is None or raw.strip() == "":
            return cls.DEFAULT_SIEVE_CAP
        try:
            value = int(raw.strip())
        except ValueError:
            value = 0
        if value < 1:
            from src.error_handler import ConfigurationError
            raise ConfigurationError(
                f"{cls.SIEVE_LIMIT_ENV} 必須是正整數 (收到 {raw!r})"
            )
        return value


# 單例配置實例
config = Config()
