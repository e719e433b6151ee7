# -*- coding: utf-8 -*-
"""
Fibering Genus Bound Certifier - 主程式入口
用法: python main.py <bound|table|grid|threshold|check> [參數]
"""

import sys
from pathlib import Path

# 設定模組搜尋路徑
sys.path.append(str(Path(__file__).parent))

from src.cli import main

if __name__ == "__main__":
    sys.exit(main())
