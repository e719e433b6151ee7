# -*- coding: utf-8 -*-
"""
Fibering Genus Bound Certifier - 質數模組
以 numpy 篩法產生質數表，並提供區間查詢（含 Bertrand 區間 [θ/2, θ]）
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np

from config.config import config
from src.error_handler import ConfigurationError
from src.logger import get_logger

logger = get_logger("Primes")


@dataclass(frozen=True, eq=False)
class PrimeTable:
    """
    所有 ≤ limit 的質數（嚴格遞增、唯讀）

    Attributes:
        limit: 篩法上限
        primes: 唯讀的 int64 陣列
    """
    limit: int
    primes: np.ndarray

    def __len__(self) -> int:
        return int(self.primes.size)

    def __iter__(self):
        return (int(p) for p in self.primes)

    def __contains__(self, value: int) -> bool:
        return self.is_prime(value)

    def as_tuple(self) -> Tuple[int, ...]:
        return tuple(int(p) for p in self.primes)

    def _require(self, value: int):
        if value > self.limit:
            raise ConfigurationError(
                f"質數表上限 {self.limit} 不足以查詢 {value}",
                hint="請以較大的 limit 重新建立質數表",
            )

    def is_prime(self, value: int) -> bool:
        """查詢 value 是否為質數（value 必須 ≤ limit）"""
        if value < 2:
            return False
        self._require(value)
        idx = int(np.searchsorted(self.primes, value, side="left"))
        return idx < self.primes.size and int(self.primes[idx]) == value

    def smallest_at_least(self, low: int) -> Optional[int]:
        """回傳 ≥ low 的最小質數；表內沒有則回傳 None"""
        idx = int(np.searchsorted(self.primes, low, side="left"))
        if idx < self.primes.size:
            return int(self.primes[idx])
        return None

    def between(self, low: int, high: int) -> np.ndarray:
        """[low, high] 之間的質數（唯讀 int64 陣列切片，不複製）"""
        if high < low:
            return self.primes[:0]
        self._require(high)
        lo = int(np.searchsorted(self.primes, low, side="left"))
        hi = int(np.searchsorted(self.primes, high, side="right"))
        return self.primes[lo:hi]

    def up_to(self, high: int) -> np.ndarray:
        """所有 ≤ high 的質數（唯讀 int64 陣列切片）"""
        return self.between(2, high)


def _sieve(limit: int) -> np.ndarray:
    """埃拉托斯特尼篩法（布林遮罩逐質數清除倍數）"""
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p: limit + 1: p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


@lru_cache(maxsize=32)
def primes_up_to(limit: int) -> PrimeTable:
    """
    建立所有 ≤ limit 的質數表

    limit < 2 時回傳空表，不視為錯誤。

    Raises:
        ConfigurationError: limit 超過 FIBGEN_SIEVE_LIMIT 上限
    """
    cap = config.get_sieve_cap()
    if limit > cap:
        raise ConfigurationError(
            f"需要 {limit} 以內的質數，超過篩法上限 {cap}",
            hint=f"請提高環境變數 {config.SIEVE_LIMIT_ENV}",
        )
    primes = _sieve(limit)
    primes.setflags(write=False)
    logger.debug(f"🔢 質數表建立完成: limit={limit}, 共 {primes.size} 個質數")
    return PrimeTable(limit=max(limit, 0), primes=primes)


def table_covering(limit: int) -> PrimeTable:
    """
    取得至少涵蓋 limit 的質數表

    上限向上取到 2 的冪次，讓相近的查詢共用快取；超過篩法上限時退回剛好的大小。
    """
    rounded = 1 << max(6, int(limit).bit_length())
    if rounded > config.get_sieve_cap():
        return primes_up_to(limit)
    return primes_up_to(rounded)


def prime_in_bertrand_interval(theta: float) -> Optional[int]:
    """
    回傳 [⌈θ/2⌉, ⌊θ⌋] 中最小的質數；θ ≥ 2 時必然存在（Bertrand 公設）

    確定性地選最小者，讓證書可重現；任何一個都能給出有效界限。
    """
    if not theta > 0:
        return None
    high = math.floor(theta)
    low = max(2, math.ceil(theta / 2))
    if high < low:
        return None
    p = table_covering(high).smallest_at_least(low)
    return p if p is not None and p <= high else None


def bertrand_gaps(table: PrimeTable, thetas: np.ndarray) -> np.ndarray:
    """
    向量化的 Bertrand 區間檢查：回傳區間 [⌈θ/2⌉, ⌊θ⌋] 內沒有質數的 θ

    Args:
        table: 至少涵蓋 max(thetas) 的質數表
        thetas: θ 值陣列
    """
    highs = np.floor(thetas).astype(np.int64)
    lows = np.maximum(2, np.ceil(thetas / 2)).astype(np.int64)
    idx = np.searchsorted(table.primes, lows, side="left")
    found = np.zeros(thetas.shape, dtype=bool)
    in_range = idx < table.primes.size
    found[in_range] = table.primes[idx[in_range]] <= highs[in_range]
    return thetas[~found]
