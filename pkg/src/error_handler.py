# -*- coding: utf-8 -*-
"""
Fibering Genus Bound Certifier - 錯誤處理模組
定義錯誤類型、例外階層、結束碼對應，以及統一的錯誤紀錄
"""

import time
from enum import Enum, IntEnum
from functools import wraps
from typing import Dict, List, Optional

from src.logger import get_logger


class ErrorType(Enum):
    """錯誤類型枚舉"""
    PRECONDITION = "precondition_error"    # 定理假設不成立（例如 n < 3）
    DOMAIN = "domain_error"                # 數學定義域錯誤（例如負數開根號）
    ARGUMENT = "argument_error"            # 參數組合不合法（例如空的網格範圍）
    CONFIGURATION = "configuration_error"  # 設定或環境變數錯誤
    IO = "io_error"                        # 檔案寫入失敗
    CHECK_FAILURE = "check_failure"        # 性質測試組未通過
    UNKNOWN = "unknown_error"


class ExitCode(IntEnum):
    """命令列結束碼"""
    SUCCESS = 0
    CHECK_FAILED = 1
    USAGE = 2
    IO = 3


_EXIT_CODES = {
    ErrorType.PRECONDITION: ExitCode.USAGE,
    ErrorType.DOMAIN: ExitCode.USAGE,
    ErrorType.ARGUMENT: ExitCode.USAGE,
    ErrorType.CONFIGURATION: ExitCode.USAGE,
    ErrorType.IO: ExitCode.IO,
    ErrorType.CHECK_FAILURE: ExitCode.CHECK_FAILED,
    ErrorType.UNKNOWN: ExitCode.CHECK_FAILED,
}


class FibgenError(Exception):
    """界限驗證器專用異常類"""

    def __init__(self, message: str, error_type: ErrorType = ErrorType.UNKNOWN,
                 hypothesis: Optional[str] = None, hint: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.error_type = error_type
        self.hypothesis = hypothesis
        self.hint = hint
        self.timestamp = time.time()

    @property
    def exit_code(self) -> ExitCode:
        return _EXIT_CODES[self.error_type]

    def __str__(self) -> str:
        text = self.message
        if self.hypothesis and self.hypothesis not in text:
            text += f" (hypothesis: {self.hypothesis})"
        if self.hint:
            text += f"; {self.hint}"
        return text


class PreconditionError(FibgenError):
    """定理假設不成立"""

    def __init__(self, message: str, hypothesis: Optional[str] = None, hint: Optional[str] = None):
        super().__init__(message, ErrorType.PRECONDITION, hypothesis, hint)


class DomainError(FibgenError, ValueError):
    """數學定義域錯誤"""

    def __init__(self, message: str, hint: Optional[str] = None):
        super().__init__(message, ErrorType.DOMAIN, None, hint)


class ArgumentError(FibgenError):
    """參數組合錯誤"""

    def __init__(self, message: str, hint: Optional[str] = None):
        super().__init__(message, ErrorType.ARGUMENT, None, hint)


class ConfigurationError(FibgenError):
    """設定錯誤"""

    def __init__(self, message: str, hint: Optional[str] = None):
        super().__init__(message, ErrorType.CONFIGURATION, None, hint)


class OutputError(FibgenError):
    """輸出檔案錯誤"""

    def __init__(self, message: str, hint: Optional[str] = None):
        super().__init__(message, ErrorType.IO, None, hint)


class ErrorHandler:
    """錯誤處理器：紀錄錯誤並決定結束碼"""

    def __init__(self):
        self.logger = get_logger("ErrorHandler")
        self.error_history: List[Dict] = []

    def handle_error(self, error: Exception, context: str = "") -> ExitCode:
        """
        處理錯誤並決定結束碼

        Args:
            error: 異常對象
            context: 錯誤上下文（通常是子命令名稱）

        Returns:
            ExitCode: 對應的結束碼
        """
        if isinstance(error, FibgenError):
            error_type = error.error_type
            exit_code = error.exit_code
        else:
            error_type = self._classify_error(error)
            exit_code = _EXIT_CODES[error_type]

        self.error_history.append({
            "timestamp": time.time(),
            "error_type": error_type.value,
            "message": str(error),
            "context": context,
            "exit_code": int(exit_code),
        })
        self.logger.debug(f"[{error_type.value}] {context}: {error}")
        return exit_code

    def _classify_error(self, error: Exception) -> ErrorType:
        """分類非 FibgenError 的錯誤"""
        if isinstance(error, OSError):
            return ErrorType.IO
        if isinstance(error, (ValueError, ArithmeticError)):
            return ErrorType.DOMAIN
        return ErrorType.UNKNOWN

    def get_error_summary(self) -> Dict:
        """
        取得錯誤摘要統計

        Returns:
            Dict: 錯誤摘要
        """
        if not self.error_history:
            return {"total_errors": 0}

        error_types: Dict[str, int] = {}
        for record in self.error_history:
            error_types[record["error_type"]] = error_types.get(record["error_type"], 0) + 1

        return {
            "total_errors": len(self.error_history),
            "error_types": error_types,
            "last_error": self.error_history[-1],
        }


def error_handler_decorator(error_type: ErrorType = ErrorType.UNKNOWN):
    """
    錯誤處理裝飾器：把非 FibgenError 的例外包裝成 FibgenError

    Args:
        error_type: 預設錯誤類型
    """
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except FibgenError:
                raise
            except Exception as e:
                raise FibgenError(str(e), error_type) from e
        return wrapper
    return decorator


# 創建全域實例
error_handler = ErrorHandler()


def handle_error(error: Exception, context: str = "") -> ExitCode:
    """處理錯誤的便捷函數"""
    return error_handler.handle_error(error, context)


def get_error_summary() -> Dict:
    """取得錯誤摘要的便捷函數"""
    return error_handler.get_error_summary()
