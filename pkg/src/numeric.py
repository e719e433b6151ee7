# -*- coding: utf-8 -*-
"""
Fibering Genus Bound Certifier - 精確數值模組

所有定理端的界限（γ、門檻次數、上界）都以整數或有理數精確計算；
只有平方根封閉公式使用浮點數，並以保守的方式取整與顯示。
"""

import math
from decimal import ROUND_FLOOR, Decimal
from fractions import Fraction

from config.config import config
from src.error_handler import DomainError

# 精確有理數：分母恆正且已約分
Rat = Fraction


def ceil_div(a: int, b: int) -> int:
    """
    回傳 ⌈a/b⌉

    Raises:
        ZeroDivisionError: b = 0
    """
    if b == 0:
        raise ZeroDivisionError("ceil_div(a, 0)")
    return -(-a // b)


def isqrt(a: int) -> int:
    """
    回傳 ⌊√a⌋，滿足 r² ≤ a < (r+1)²

    Raises:
        DomainError: a < 0
    """
    if a < 0:
        raise DomainError(f"isqrt 的參數必須非負 (收到 {a})")
    return math.isqrt(a)


def sqrt_at_least(k: int, m: int) -> bool:
    """精確判斷 k ≤ √m（m ≥ 0）"""
    if m < 0:
        raise DomainError(f"sqrt_at_least 的被開方數必須非負 (收到 {m})")
    return k <= 0 or k * k <= m


def sqrt_greater_than(k: int, m: int) -> bool:
    """精確判斷 k < √m（m ≥ 0）"""
    if m < 0:
        raise DomainError(f"sqrt_greater_than 的被開方數必須非負 (收到 {m})")
    return k < 0 or k * k < m


def rat_ceil(x: Rat) -> int:
    """不小於 x 的最小整數"""
    return math.ceil(Rat(x))


def conservative_ceil(value: float, tolerance: float = config.FLOAT_TOLERANCE) -> int:
    """
    浮點下界的保守取整：⌈value − tolerance⌉

    浮點誤差只可能讓結果變小，不會因為 1.0000000000000002 而宣稱下界為 2。
    """
    return math.ceil(value - tolerance)


def round_down(value: float, places: int = config.DISPLAY_DECIMALS) -> Decimal:
    """把浮點下界向下捨入到指定位數，保留其作為有效下界的性質"""
    quantum = Decimal(1).scaleb(-places)
    return Decimal(repr(value)).quantize(quantum, rounding=ROUND_FLOOR)


def format_rat(x: Rat) -> str:
    """有理數輸出為 num/den（整數不帶分母）"""
    x = Rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
