# -*- coding: utf-8 -*-
"""
Fibering Genus Bound Certifier - 統一日誌系統模組

設計原則：
1. 一次執行 = 一個日誌實例（不論有多少模組）
2. 所有模組共用同一個底層 logger，以 [模組名稱] 標識
3. 主控台輸出走 stderr，stdout 保留給機器可讀輸出
4. 主控台格式不含時間戳，相同參數的執行結果逐位元組一致
"""

import logging
import sys
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional

# 全域變數：確保整個執行週期只有一個日誌實例
_GLOBAL_LOG_FILE: Optional[Path] = None
_GLOBAL_LOGGER: Optional[logging.Logger] = None
_CONSOLE_HANDLER: Optional[logging.Handler] = None
_EXECUTION_START_TIME: Optional[datetime] = None

LOGGER_NAME = "FibgenCertifier"


class _StderrHandler(logging.StreamHandler):
    """永遠寫到當下的 sys.stderr（測試框架會替換它）"""

    def __init__(self):
        super().__init__(sys.stderr)

    @property
    def stream(self):
        return sys.stderr

    @stream.setter
    def stream(self, value):
        pass


def _get_config():
    """安全地獲取 config，避免循環導入"""
    try:
        from config.config import config
        return config
    except ImportError:
        return None


def _get_logging_settings() -> Dict[str, Any]:
    """安全地獲取 settings.json 的 logging 區段"""
    try:
        from src.settings_manager import settings_manager
        return settings_manager.get_logging_settings()
    except ImportError:
        return {}


def _initialize_global_logger() -> logging.Logger:
    """
    初始化全域日誌記錄器（整個執行週期只執行一次）
    """
    global _GLOBAL_LOG_FILE, _GLOBAL_LOGGER, _CONSOLE_HANDLER, _EXECUTION_START_TIME

    if _GLOBAL_LOGGER is not None:
        return _GLOBAL_LOGGER

    _EXECUTION_START_TIME = datetime.now()

    config = _get_config()
    settings = _get_logging_settings()
    if config:
        logs_dir = config.LOGS_DIR
        log_format = config.LOG_FORMAT
        console_format = config.CONSOLE_LOG_FORMAT
        default_level = config.LOG_LEVEL
        log_prefix = config.LOG_FILE_PREFIX
    else:
        logs_dir = Path(__file__).parent.parent / "logs"
        log_format = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
        console_format = "%(levelname)s - %(message)s"
        default_level = "WARNING"
        log_prefix = "execution_"
    level_name = str(settings.get("level", default_level)).upper()
    console_level = getattr(logging, level_name, logging.WARNING)

    _GLOBAL_LOGGER = logging.getLogger(LOGGER_NAME)
    _GLOBAL_LOGGER.setLevel(logging.DEBUG)
    _GLOBAL_LOGGER.handlers.clear()  # 清除可能存在的舊處理器
    _GLOBAL_LOGGER.propagate = False

    # 控制台處理器（stderr）
    _CONSOLE_HANDLER = _StderrHandler()
    _CONSOLE_HANDLER.setLevel(console_level)
    _CONSOLE_HANDLER.setFormatter(logging.Formatter(console_format))
    _GLOBAL_LOGGER.addHandler(_CONSOLE_HANDLER)

    _sync_logger_level()

    # 檔案處理器（記錄所有級別，預設關閉）
    if settings.get("file_output", False):
        timestamp = _EXECUTION_START_TIME.strftime("%Y%m%d_%H%M%S")
        logs_dir.mkdir(parents=True, exist_ok=True)
        _GLOBAL_LOG_FILE = logs_dir / f"{log_prefix}{timestamp}.log"
        file_handler = logging.FileHandler(_GLOBAL_LOG_FILE, encoding="utf-8")
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(logging.Formatter(log_format))
        _GLOBAL_LOGGER.addHandler(file_handler)
        _sync_logger_level()

        _GLOBAL_LOGGER.debug("=" * 70)
        _GLOBAL_LOGGER.debug("🚀 Fibering Genus Bound Certifier 執行開始")
        _GLOBAL_LOGGER.debug(f"   時間: {_EXECUTION_START_TIME.strftime('%Y-%m-%d %H:%M:%S')}")
        _GLOBAL_LOGGER.debug(f"   日誌檔案: {_GLOBAL_LOG_FILE}")
        _GLOBAL_LOGGER.debug("=" * 70)

    return _GLOBAL_LOGGER


def _sync_logger_level():
    """logger 等級取所有處理器的最低等級，低於它的紀錄不會被建立"""
    if _GLOBAL_LOGGER is not None and _GLOBAL_LOGGER.handlers:
        _GLOBAL_LOGGER.setLevel(min(handler.level for handler in _GLOBAL_LOGGER.handlers))


def set_console_level(level: str):
    """調整主控台輸出等級（--verbose 使用）"""
    _initialize_global_logger()
    if _CONSOLE_HANDLER is not None:
        _CONSOLE_HANDLER.setLevel(getattr(logging, level.upper(), logging.WARNING))
        _sync_logger_level()


class CertifierLogger:
    """
    界限驗證器專用日誌記錄器

    所有模組共用同一個底層 logger，但各自標識模組名稱。
    底層 logger 延遲到第一次記錄時才初始化，避免與設定模組循環導入。
    """

    def __init__(self, module_name: str = "Main"):
        """
        初始化日誌記錄器

        Args:
            module_name: 模組名稱（用於日誌中的標識）
        """
        self.module_name = module_name

    @property
    def _logger(self) -> logging.Logger:
        return _initialize_global_logger()

    def _format_message(self, message: str) -> str:
        """格式化訊息，加入模組標識"""
        return f"[{self.module_name}] {message}"

    def is_enabled_for(self, level: int) -> bool:
        """是否有任何處理器會輸出此等級"""
        return self._logger.isEnabledFor(level)

    def debug(self, message: str):
        """記錄除錯訊息"""
        self._logger.debug(self._format_message(message))

    def info(self, message: str):
        """記錄一般訊息"""
        self._logger.info(self._format_message(message))

    def warning(self, message: str):
        """記錄警告訊息"""
        self._logger.warning(self._format_message(message))

    def error(self, message: str):
        """記錄錯誤訊息"""
        self._logger.error(self._format_message(message))

    def critical(self, message: str):
        """記錄嚴重錯誤訊息"""
        self._logger.critical(self._format_message(message))

    # ========== 結構化日誌方法 ==========

    def create_separator(self, title: str = ""):
        """創建分隔線"""
        if title:
            total_width = 70
            title_with_space = f" {title} "
            padding_total = total_width - len(title_with_space)
            left_padding = padding_total // 2
            right_padding = padding_total - left_padding
            separator = "=" * left_padding + title_with_space + "=" * right_padding
        else:
            separator = "=" * 70
        self._logger.info(separator)

    def phase_start(self, phase_name: str, details: str = ""):
        """記錄階段開始"""
        msg = f"▶️  {phase_name}"
        if details:
            msg += f" - {details}"
        self.info(msg)

    def phase_end(self, phase_name: str, success: bool = True):
        """記錄階段結束"""
        emoji = "✅" if success else "❌"
        status = "完成" if success else "失敗"
        self.info(f"{emoji} {phase_name} {status}")

    def certificate_emitted(self, kind: str, n: int, d: int, value: str):
        """記錄產生的界限證書"""
        self.debug(f"📜 {kind} (n={n}, d={d}): {value}")

    def suite_result(self, suite: str, passed: bool, checked: int, elapsed_time: float):
        """記錄單一性質測試組結果"""
        if passed:
            self.info(f"✅ {suite}: {checked} 項檢查通過 ({elapsed_time:.2f}秒)")
        else:
            self.error(f"🚨 {suite}: 檢查失敗 ({checked} 項, {elapsed_time:.2f}秒)")

    def suite_summary(self, total: int, passed: int, failed: int, elapsed_time: float):
        """記錄所有測試組的摘要"""
        pass_rate = (passed / total * 100) if total > 0 else 0
        self.create_separator("檢查摘要")
        self.info(f"📊 測試組數: {total}")
        self.info(f"   ✅ 通過: {passed}")
        self.info(f"   ❌ 失敗: {failed}")
        self.info(f"   📈 通過率: {pass_rate:.1f}%")
        self.info(f"   ⏱️  總耗時: {elapsed_time:.2f}秒")


# ========== 便捷函數 ==========

def get_logger(module_name: str = "Main") -> CertifierLogger:
    """
    取得日誌記錄器實例

    Args:
        module_name: 模組名稱

    Returns:
        CertifierLogger: 日誌記錄器實例
    """
    return CertifierLogger(module_name)


def finalize_logging():
    """
    結束日誌記錄（在程式結束時呼叫）
    """
    if _GLOBAL_LOGGER and _EXECUTION_START_TIME:
        end_time = datetime.now()
        elapsed = (end_time - _EXECUTION_START_TIME).total_seconds()

        _GLOBAL_LOGGER.debug("=" * 70)
        _GLOBAL_LOGGER.debug("🏁 Fibering Genus Bound Certifier 執行結束")
        _GLOBAL_LOGGER.debug(f"   總執行時間: {elapsed:.2f} 秒")
        _GLOBAL_LOGGER.debug("=" * 70)
