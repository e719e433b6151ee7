# -*- coding: utf-8 -*-
"""
Fibering Genus Bound Certifier - 界限模組

把每一個纖維虧格 (fibering genus) 的上下界實作成「產生證書」的運算，
並在離散參數空間上最佳化帶參數的界限：

- 退化界限：對質數 p 與 e ≥ 1 (pe ≤ d)，令 γ = pe + e − n − 1；若 γ ≥ 2，
  fib.gen ≥ min{(p−2)/2, 2γ−1}
- 門檻界限：若 p ≥ 2g+3 且 d ≥ p⌈(n + ⌊(g+5)/2⌋)/(p+1)⌉，則 fib.gen ≥ g+1；
  g = 0 時改用 conic bundle 門檻 d ≥ 3⌈(n+3)/4⌉
- 封閉公式：(−ι + √(ι² + 4.5d))/9 − 1，ι = n+2−d，以及其 Calabi–Yau、
  Jensen、√(n+2) 形式
- 一般型界限 2(d−n)−3、直紋簇條件界限 1 + √(n+2)/8、直線投影上界
"""

import logging
import math
from bisect import bisect_right
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Any, Callable, Dict, Optional, Tuple, Union

import numpy as np

from config.config import config
from src.error_handler import ArgumentError, DomainError, PreconditionError
from src.logger import get_logger
from src.numeric import (
    Rat, ceil_div, conservative_ceil, format_rat, rat_ceil, round_down,
    sqrt_at_least, sqrt_greater_than,
)
from src.primes import prime_in_bertrand_interval, table_covering

logger = get_logger("Bounds")

DIMENSION_HYPOTHESIS = "dimension n ≥ 3"
CONIC_HINT = "g = 0 由 conic bundle 門檻處理: d ≥ 3⌈(n+3)/4⌉ (請使用 conic_bundle_threshold)"


class Direction(Enum):
    """界限方向"""
    LOWER = "lower"
    UPPER = "upper"


class BoundKind(Enum):
    """證書種類（輸出時使用 value）"""
    DEGENERATION_MIN = "DegenerationMin"
    GENUS_THRESHOLD = "GenusThreshold"
    CONIC_BUNDLE_REMARK = "ConicBundleRemark"
    CLOSED_FORM = "ClosedForm"
    CALABI_YAU = "CalabiYau"
    JENSEN = "Jensen"
    THEOREM_B = "TheoremB"
    GENERAL_TYPE_COV_GON = "GeneralTypeCovGon"
    RULED_VARIETY_CONDITIONAL = "RuledVarietyConditional"
    PROJECTION_UPPER_GENUS = "ProjectionUpperGenus"
    PROJECTION_UPPER_GONALITY = "ProjectionUpperGonality"


class HypothesisClass(Enum):
    """下界適用的超曲面類別"""
    VERY_GENERAL = "very general"
    ANY_SMOOTH = "any smooth"


class CurveExample(Enum):
    """正特徵中正則但不光滑的曲線例子"""
    QUASI_ELLIPTIC = "quasi_elliptic"
    ROSENLICHT = "rosenlicht"
    FERMAT = "fermat"


# ==================== 資料類別 ====================

@dataclass(frozen=True)
class Hypersurface:
    """P^{n+1} 中 n 維 d 次超曲面 X_{n,d}"""
    n: int
    d: int

    def __post_init__(self):
        if self.n < 1 or self.d < 1:
            raise ArgumentError(f"超曲面需要 n ≥ 1 且 d ≥ 1 (收到 n={self.n}, d={self.d})")

    @property
    def fano_index(self) -> int:
        """ι = n + 2 − d；ι > 0 時為 Fano"""
        return self.n + 2 - self.d

    def require_theorem_dimension(self):
        """檢查定理的維度假設 n ≥ 3"""
        if self.n < 3:
            raise PreconditionError(
                f"定理假設不成立: {DIMENSION_HYPOTHESIS} (收到 n={self.n})",
                hypothesis=DIMENSION_HYPOTHESIS,
            )


@dataclass(frozen=True)
class DegenerationWitness:
    """退化界限的見證 (p, e, γ)"""
    p: int
    e: int
    gamma: int

    def to_dict(self) -> Dict[str, Any]:
        return {"type": "degeneration", "p": self.p, "e": self.e, "gamma": self.gamma}


@dataclass(frozen=True)
class ThresholdWitness:
    """門檻界限的見證 (p, g, r, e)，r = ⌊(g+3)/2⌋，e = ⌈(n+r+1)/(p+1)⌉"""
    p: int
    g: int
    r: int
    e: int

    def to_dict(self) -> Dict[str, Any]:
        return {"type": "threshold", "p": self.p, "g": self.g, "r": self.r, "e": self.e}


@dataclass(frozen=True)
class ScalarWitness:
    """封閉公式類界限的純量參數"""
    iota: Optional[int] = None
    theta: Optional[float] = None
    radicand: Optional[int] = None
    covering_gonality: Optional[int] = None
    bertrand: Optional[DegenerationWitness] = None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"type": "scalar"}
        if self.iota is not None:
            data["iota"] = self.iota
        if self.theta is not None:
            data["theta"] = str(round_down(self.theta, 9))
        if self.radicand is not None:
            data["radicand"] = self.radicand
        if self.covering_gonality is not None:
            data["covering_gonality"] = self.covering_gonality
        if self.bertrand is not None:
            data["bertrand"] = self.bertrand.to_dict()
        return data


Witness = Union[DegenerationWitness, ThresholdWitness, ScalarWitness]


@dataclass(frozen=True)
class BoundCertificate:
    """
    一個上界或下界，連同證明它的定理種類與見證

    value 為精確有理數（Rat）或封閉公式的浮點值；integer_value 對下界是
    max(0, ⌈value⌉)，對上界是 ⌊value⌋。
    """
    direction: Direction
    kind: BoundKind
    value: Union[Rat, float]
    integer_value: int
    witness: Optional[Witness] = None
    hypothesis: Optional[HypothesisClass] = None
    conditional_note: Optional[str] = None

    @property
    def is_exact(self) -> bool:
        return isinstance(self.value, Rat)

    @property
    def is_conditional(self) -> bool:
        return self.conditional_note is not None

    def display_value(self, places: int = config.DISPLAY_DECIMALS) -> str:
        """精確值輸出為 num/den；浮點值向下捨入"""
        if self.is_exact:
            return format_rat(self.value)
        return str(round_down(self.value, places))

    def to_dict(self, places: int = config.DISPLAY_DECIMALS) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "direction": self.direction.value,
            "value": self.display_value(places),
            "integer_value": self.integer_value,
            "exact": self.is_exact,
            "hypothesis": self.hypothesis.value if self.hypothesis else None,
            "conditional_note": self.conditional_note,
            "witness": self.witness.to_dict() if self.witness else None,
        }


@dataclass(frozen=True)
class Report:
    """combined_bound 的彙整結果"""
    hypersurface: Hypersurface
    certificates: Tuple[BoundCertificate, ...]
    best_lower: int
    best_kind: Optional[BoundKind]
    best_certificate: Optional[BoundCertificate]
    upper_genus: int
    upper_gonality: int

    @property
    def sane(self) -> bool:
        """best_lower ≤ upper_genus"""
        return self.best_lower <= self.upper_genus

    def to_dict(self, places: int = config.DISPLAY_DECIMALS) -> Dict[str, Any]:
        return {
            "n": self.hypersurface.n,
            "d": self.hypersurface.d,
            "certificates": [cert.to_dict(places) for cert in self.certificates],
            "best_lower": self.best_lower,
            "best_kind": self.best_kind.value if self.best_kind else None,
            "upper_genus": self.upper_genus,
            "upper_gonality": self.upper_gonality,
            "sane": self.sane,
        }


# ==================== 證書建構 ====================

def _lower_exact(kind: BoundKind, value: Rat, witness: Optional[Witness],
                 hypothesis: HypothesisClass = HypothesisClass.VERY_GENERAL) -> BoundCertificate:
    return BoundCertificate(
        direction=Direction.LOWER, kind=kind, value=Rat(value),
        integer_value=max(0, rat_ceil(value)), witness=witness, hypothesis=hypothesis,
    )


def _lower_float(kind: BoundKind, value: float, witness: Optional[Witness],
                 conditional_note: Optional[str] = None) -> BoundCertificate:
    return BoundCertificate(
        direction=Direction.LOWER, kind=kind, value=float(value),
        integer_value=max(0, conservative_ceil(value)), witness=witness,
        hypothesis=HypothesisClass.VERY_GENERAL, conditional_note=conditional_note,
    )


def _upper_exact(kind: BoundKind, value: int) -> BoundCertificate:
    return BoundCertificate(
        direction=Direction.UPPER, kind=kind, value=Rat(value),
        integer_value=math.floor(Rat(value)),
    )


def _require_prime(p: int):
    if not table_covering(max(p, 2)).is_prime(p):
        raise DomainError(f"{p} 不是質數")


# ==================== 退化界限 ====================

def gamma(n: int, p: int, e: int) -> int:
    """γ = pe + e − n − 1"""
    return p * e + e - n - 1


def _degeneration_certificate(h: Hypersurface, p: int, e: int) -> Optional[BoundCertificate]:
    """(p, e) 已知為質數與正整數時的退化證書；pe > d 或 γ < 2 時為 None"""
    if e < 1 or p * e > h.d:
        return None
    g = gamma(h.n, p, e)
    if g < 2:
        return None
    value = min(Rat(p - 2, 2), Rat(2 * g - 1))
    return _lower_exact(BoundKind.DEGENERATION_MIN, value, DegenerationWitness(p, e, g))


def degeneration_bound(h: Hypersurface, p: int, e: int) -> Optional[BoundCertificate]:
    """
    單一 (p, e) 的退化界限 min{(p−2)/2, 2γ−1}

    pe > d 或 γ < 2 時不適用，回傳 None。

    Raises:
        PreconditionError: n < 3
        DomainError: p 不是質數
    """
    h.require_theorem_dimension()
    _require_prime(p)
    return _degeneration_certificate(h, p, e)


def _smallest_optimal_e(n: int, p: int, e_max: int) -> int:
    """
    固定 p 時達到最佳值的最小 e

    γ 對 e 嚴格遞增。若 2γ(e_max)−1 仍小於 (p−2)/2，只有 e_max 達到最佳；
    否則最佳值是 (p−2)/2，只需 4γ ≥ p 且 γ ≥ 2。
    """
    if 4 * gamma(n, p, e_max) - 2 < p - 2:
        return e_max
    gamma_required = max(2, ceil_div(p, 4))
    return min(e_max, max(1, ceil_div(gamma_required + n + 1, p + 1)))


def best_degeneration_bound(h: Hypersurface) -> Optional[BoundCertificate]:
    """
    在所有 p ≤ d、1 ≤ e ≤ ⌊d/p⌋ 上最佳化退化界限

    固定 p 時 e = ⌊d/p⌋ 給出最大值，因此只需對每個質數比較一次兩倍值
    min{p−2, 4γ−2}（整數）。同值時取最小的 p，再取最小的 e；
    沒有任何可行 (p, e) 時回傳 None。
    """
    h.require_theorem_dimension()
    primes = table_covering(h.d).up_to(h.d)
    if primes.size == 0:
        return None
    e_max = h.d // primes
    gam = gamma(h.n, primes, e_max)
    doubled = np.where(gam >= 2, np.minimum(primes - 2, 4 * gam - 2), -1)
    idx = int(np.argmax(doubled))
    if doubled[idx] < 0:
        return None
    p = int(primes[idx])
    e = _smallest_optimal_e(h.n, p, int(e_max[idx]))
    return _degeneration_certificate(h, p, e)


# ==================== 門檻界限 ====================

def threshold_degree(n: int, g: int, p: int) -> int:
    """p⌈(n + ⌊(g+5)/2⌋)/(p+1)⌉"""
    return p * ceil_div(n + (g + 5) // 2, p + 1)


def _threshold_degrees(n: int, g: int, primes: np.ndarray) -> np.ndarray:
    """threshold_degree 的向量版本"""
    return primes * -(-(n + (g + 5) // 2) // (primes + 1))


def _require_genus_hypotheses(n: int, g: int):
    if n < 3:
        raise PreconditionError(
            f"定理假設不成立: {DIMENSION_HYPOTHESIS} (收到 n={n})",
            hypothesis=DIMENSION_HYPOTHESIS,
        )
    if g < 1:
        raise PreconditionError(
            f"定理假設不成立: positive integer g ≥ 1 (收到 g={g})",
            hypothesis="positive integer g ≥ 1",
            hint=CONIC_HINT,
        )


def genus_threshold_holds(n: int, d: int, g: int, p: int) -> bool:
    """p ≥ 2g+3 且 d ≥ p⌈(n + ⌊(g+5)/2⌋)/(p+1)⌉"""
    _require_genus_hypotheses(n, g)
    return p >= 2 * g + 3 and d >= threshold_degree(n, g, p)


def conic_bundle_threshold(n: int) -> int:
    """conic bundle 門檻次數 3⌈(n+3)/4⌉"""
    if n < 3:
        raise PreconditionError(
            f"定理假設不成立: {DIMENSION_HYPOTHESIS} (收到 n={n})",
            hypothesis=DIMENSION_HYPOTHESIS,
        )
    return 3 * ceil_div(n + 3, 4)


@lru_cache(maxsize=65536)
def min_degree_for_genus(n: int, g: int) -> Tuple[int, int]:
    """
    保證 fib.gen ≥ g+1 的最小次數 (d_min, p)

    在 p ≥ 2g+3 的質數上最小化 p⌈(n + ⌊(g+5)/2⌋)/(p+1)⌉，同值取最小的 p。
    搜尋上限是最小可用質數達到的門檻：更大的 p 本身就超過它。
    """
    _require_genus_hypotheses(n, g)
    low = 2 * g + 3
    # Bertrand: [low, 2·low] 內必有質數
    p0 = table_covering(2 * low).smallest_at_least(low)
    cap = threshold_degree(n, g, p0)
    primes = table_covering(cap).between(p0, cap)
    degrees = _threshold_degrees(n, g, primes)
    idx = int(np.argmin(degrees))
    return int(degrees[idx]), int(primes[idx])


def _threshold_witness(n: int, g: int, p: int) -> ThresholdWitness:
    r = (g + 3) // 2
    return ThresholdWitness(p=p, g=g, r=r, e=ceil_div(n + r + 1, p + 1))


def best_threshold_bound(h: Hypersurface) -> Optional[BoundCertificate]:
    """
    反轉門檻定理：滿足某個質數門檻的最大 g+1，或 conic bundle 門檻給出的 1

    g 只需搜尋到 ⌊(d−3)/2⌋（p ≥ 2g+3 且 p ≤ d）。min_degree_for_genus 對 g 不遞減
    （門檻對 g 遞增，可用質數集合對 g 縮小），所以可行的 g 是一段前綴，以二分搜尋取最大者；
    見證取最小的可行質數。
    """
    h.require_theorem_dimension()
    # g ≥ 1 需要 p ≥ 5，門檻 ≥ 5(n+3)/6
    if 6 * h.d >= 5 * (h.n + 3):
        feasible = bisect_right(range(1, (h.d - 3) // 2 + 1), h.d,
                                key=lambda g: min_degree_for_genus(h.n, g)[0])
        if feasible:
            g = feasible
            primes = table_covering(h.d).between(2 * g + 3, h.d)
            p = int(primes[np.argmax(_threshold_degrees(h.n, g, primes) <= h.d)])
            return _lower_exact(BoundKind.GENUS_THRESHOLD, Rat(g + 1), _threshold_witness(h.n, g, p))
    if h.d >= conic_bundle_threshold(h.n):
        witness = ThresholdWitness(p=3, g=0, r=2, e=ceil_div(h.n + 3, 4))
        return _lower_exact(BoundKind.CONIC_BUNDLE_REMARK, Rat(1), witness)
    return None


def statement_proof_e_identity(n: int, g: int, p: int) -> bool:
    """⌈(n + ⌊(g+5)/2⌋)/(p+1)⌉ = ⌈(n + ⌊(g+3)/2⌋ + 1)/(p+1)⌉"""
    return ceil_div(n + (g + 5) // 2, p + 1) == ceil_div(n + (g + 3) // 2 + 1, p + 1)


# ==================== 封閉公式 ====================

def _closed_form_numerator(h: Hypersurface) -> float:
    """−ι + √(ι² + 4.5d)，ι > 0 時改寫為 4.5d/(ι + √…) 以避免相消"""
    iota = h.fano_index
    root = math.sqrt(iota * iota + 4.5 * h.d)
    if iota > 0:
        return 4.5 * h.d / (iota + root)
    return root - iota


def theta(h: Hypersurface) -> float:
    """θ = (−ι + √(ι² + 4.5d))/(9/4)"""
    return _closed_form_numerator(h) / 2.25


def theta_residual(h: Hypersurface) -> float:
    """θ 所滿足的二次方程的殘差 (θ/2 − 2)/2 − (2(d − θ + d/θ − 1 − n) − 3)"""
    t = theta(h)
    return (t / 2 - 2) / 2 - (2 * (h.d - t + h.d / t - 1 - h.n) - 3)


def bertrand_degeneration_witness(h: Hypersurface,
                                  theta_value: Optional[float] = None) -> Optional[DegenerationWitness]:
    """
    封閉公式證明中選出的退化參數：θ/2 ≤ p ≤ θ 的最小質數，e = ⌊d/p⌋

    θ < 2 或 e = 0 時回傳 None。
    """
    t = theta(h) if theta_value is None else theta_value
    if t < 2:
        return None
    p = prime_in_bertrand_interval(t)
    if p is None:
        return None
    e = h.d // p
    if e < 1:
        return None
    return DegenerationWitness(p=p, e=e, gamma=gamma(h.n, p, e))


def closed_form_bound(h: Hypersurface) -> BoundCertificate:
    """(−ι + √(ι² + 4.5d))/9 − 1，等於 θ/4 − 1"""
    h.require_theorem_dimension()
    numerator = _closed_form_numerator(h)
    t = numerator / 2.25
    witness = ScalarWitness(
        iota=h.fano_index, theta=t, bertrand=bertrand_degeneration_witness(h, t),
    )
    return _lower_float(BoundKind.CLOSED_FORM, numerator / 9 - 1, witness)


def theorem_b_bound(h: Hypersurface) -> Optional[BoundCertificate]:
    """d ≥ n+2 − √(n+2)/4 時，fib.gen ≥ √(n+2)/5 − 1"""
    h.require_theorem_dimension()
    k = h.n + 2 - h.d
    # 4(n+2−d) ≤ √(n+2)，以整數精確判斷
    if not sqrt_at_least(4 * k, h.n + 2):
        return None
    witness = ScalarWitness(iota=k, radicand=h.n + 2)
    return _lower_float(BoundKind.THEOREM_B, math.sqrt(h.n + 2) / 5 - 1, witness)


def calabi_yau_bound(n: int) -> BoundCertificate:
    """d = n+2 時 fib.gen ≥ √(n+2)/(3√2) − 1，以 √((n+2)/18) − 1 計算"""
    if n < 3:
        raise PreconditionError(
            f"定理假設不成立: {DIMENSION_HYPOTHESIS} (收到 n={n})",
            hypothesis=DIMENSION_HYPOTHESIS,
        )
    witness = ScalarWitness(iota=0, radicand=n + 2)
    return _lower_float(BoundKind.CALABI_YAU, math.sqrt((n + 2) / 18) - 1, witness)


def jensen_bound(h: Hypersurface) -> BoundCertificate:
    """((1 + 2^{−1/2}·sign(d−n−2))/9)·(d−n−2) + √(d/36) − 1"""
    h.require_theorem_dimension()
    m = h.d - h.n - 2
    sign = (m > 0) - (m < 0)
    value = (1 + sign * 2 ** -0.5) / 9 * m + math.sqrt(h.d / 36) - 1
    return _lower_float(BoundKind.JENSEN, value, ScalarWitness(iota=-m))


# ==================== 一般型與條件界限 ====================

def covering_gonality_lower(h: Hypersurface) -> Optional[int]:
    """d ≥ n+2 的光滑超曲面 cov.gon ≥ d − n；其他情況回傳 None"""
    if h.d < h.n + 2:
        return None
    return h.d - h.n


def general_type_bound(h: Hypersurface) -> Optional[BoundCertificate]:
    """任意光滑 d ≥ n+2 超曲面：fib.gen ≥ 2(d−n)−3"""
    c = covering_gonality_lower(h)
    if c is None:
        return None
    value = min_genus_with_gonality_at_least(c)
    witness = ScalarWitness(iota=h.fano_index, covering_gonality=c)
    return _lower_exact(BoundKind.GENERAL_TYPE_COV_GON, Rat(value), witness,
                        hypothesis=HypothesisClass.ANY_SMOOTH)


RULED_VARIETY_NOTE = (
    "bounds only the genus of fibrations whose fibers have geometric genus ≥ 2; "
    "not an unconditional fib.gen lower bound"
)


def ruled_variety_conditional_bound(h: Hypersurface) -> Optional[BoundCertificate]:
    """d > n+1 − √(n+2)/4 時，幾何虧格 ≥ 2 的纖維化滿足 g ≥ 1 + √(n+2)/8"""
    h.require_theorem_dimension()
    k = h.n + 1 - h.d
    # 4(n+1−d) < √(n+2)
    if not sqrt_greater_than(4 * k, h.n + 2):
        return None
    witness = ScalarWitness(iota=h.fano_index, radicand=h.n + 2)
    return _lower_float(BoundKind.RULED_VARIETY_CONDITIONAL, 1 + math.sqrt(h.n + 2) / 8,
                        witness, conditional_note=RULED_VARIETY_NOTE)


# ==================== 上界與曲線算術 ====================

def projection_upper_bounds(d: int) -> Tuple[BoundCertificate, BoundCertificate]:
    """從直線投影：fib.gen ≤ (d−1)(d−2)/2，fib.gon ≤ d−1"""
    if d < 1:
        raise ArgumentError(f"次數必須 ≥ 1 (收到 d={d})")
    return (
        _upper_exact(BoundKind.PROJECTION_UPPER_GENUS, (d - 1) * (d - 2) // 2),
        _upper_exact(BoundKind.PROJECTION_UPPER_GONALITY, d - 1),
    )


def gonality_from_genus(g: int) -> int:
    """Brill–Noether：gon ≤ ⌊(g+3)/2⌋"""
    if g < 0:
        raise DomainError(f"虧格必須非負 (收到 g={g})")
    return (g + 3) // 2


def min_genus_with_gonality_at_least(c: int) -> int:
    """使 ⌊(g+3)/2⌋ ≥ c 的最小 g，即 2c − 3；c < 2 時為 0"""
    if c < 2:
        return 0
    return 2 * c - 3


def tate_smooth_guarantee(g: int, p: int) -> bool:
    """p ≥ 2g+3 時，算術虧格 g 的正則曲線必為光滑"""
    return p >= 2 * g + 3


def sharpness_example_genus(kind: Union[CurveExample, str], p: int) -> int:
    """
    正則但不光滑曲線例子的算術虧格

    Raises:
        DomainError: 例子與特徵不相容，或 p 不是質數
    """
    try:
        kind = CurveExample(kind)
    except ValueError as e:
        raise DomainError(f"未知的曲線例子: {kind!r}") from e
    _require_prime(p)
    if kind is CurveExample.QUASI_ELLIPTIC:
        if p not in (2, 3):
            raise DomainError(f"quasi-elliptic 例子只存在於特徵 2 或 3 (收到 p={p})")
        return 1
    if kind is CurveExample.ROSENLICHT:
        if p < 3:
            raise DomainError(f"Rosenlicht 例子需要 p ≥ 3 (收到 p={p})")
        return (p - 1) // 2
    return (p - 1) * (p - 2) // 2


# ==================== 彙整 ====================

def combined_bound(h: Hypersurface) -> Report:
    """
    產生 (n, d) 的所有證書並選出最佳無條件下界

    最佳值為非條件下界證書 integer_value 的最大者，同值時取固定順序中的第一個；
    最佳值為 0 時 best_kind 為 None。
    """
    h.require_theorem_dimension()
    upper_genus, upper_gonality = projection_upper_bounds(h.d)
    candidates = [
        best_degeneration_bound(h),
        best_threshold_bound(h),
        closed_form_bound(h),
        theorem_b_bound(h),
        calabi_yau_bound(h.n) if h.d == h.n + 2 else None,
        jensen_bound(h),
        general_type_bound(h),
        ruled_variety_conditional_bound(h),
        upper_genus,
        upper_gonality,
    ]
    certificates = tuple(cert for cert in candidates if cert is not None)

    best: Optional[BoundCertificate] = None
    for cert in certificates:
        if cert.direction is not Direction.LOWER or cert.is_conditional:
            continue
        if cert.integer_value > 0 and (best is None or cert.integer_value > best.integer_value):
            best = cert
    if logger.is_enabled_for(logging.DEBUG):
        for cert in certificates:
            logger.certificate_emitted(cert.kind.value, h.n, h.d, cert.display_value())

    report = Report(
        hypersurface=h,
        certificates=certificates,
        best_lower=best.integer_value if best else 0,
        best_kind=best.kind if best else None,
        best_certificate=best,
        upper_genus=upper_genus.integer_value,
        upper_gonality=upper_gonality.integer_value,
    )
    if not report.sane:
        logger.error(f"best_lower {report.best_lower} 超過上界 {report.upper_genus} (n={h.n}, d={h.d})")
    return report


# ==================== 證書重放 ====================

def _replay_threshold(h: Hypersurface, cert: BoundCertificate) -> bool:
    w = cert.witness
    if not isinstance(w, ThresholdWitness) or w.p * w.e > h.d:
        return False
    if cert.kind is BoundKind.CONIC_BUNDLE_REMARK:
        return (w.p, w.g, w.r) == (3, 0, 2) and w.e == ceil_div(h.n + 3, 4) \
            and h.d >= conic_bundle_threshold(h.n) and cert.value == 1
    return (
        genus_threshold_holds(h.n, h.d, w.g, w.p)
        and w == _threshold_witness(h.n, w.g, w.p)
        and cert.value == w.g + 1
    )


def _replay_degeneration(h: Hypersurface, cert: BoundCertificate) -> bool:
    w = cert.witness
    if not isinstance(w, DegenerationWitness) or w.gamma != gamma(h.n, w.p, w.e):
        return False
    replayed = degeneration_bound(h, w.p, w.e)
    return replayed is not None and replayed.value == cert.value


_SCALAR_RECOMPUTE: Dict[BoundKind, Callable[[Hypersurface], Optional[BoundCertificate]]] = {
    BoundKind.CLOSED_FORM: closed_form_bound,
    BoundKind.THEOREM_B: theorem_b_bound,
    BoundKind.CALABI_YAU: lambda h: calabi_yau_bound(h.n) if h.d == h.n + 2 else None,
    BoundKind.JENSEN: jensen_bound,
    BoundKind.GENERAL_TYPE_COV_GON: general_type_bound,
    BoundKind.RULED_VARIETY_CONDITIONAL: ruled_variety_conditional_bound,
    BoundKind.PROJECTION_UPPER_GENUS: lambda h: projection_upper_bounds(h.d)[0],
    BoundKind.PROJECTION_UPPER_GONALITY: lambda h: projection_upper_bounds(h.d)[1],
}


def replay_certificate(h: Hypersurface, cert: BoundCertificate) -> bool:
    """只用 (n, d) 與見證重新推導證書，檢查其值是否一致"""
    if cert.kind is BoundKind.DEGENERATION_MIN:
        return _replay_degeneration(h, cert)
    if cert.kind in (BoundKind.GENUS_THRESHOLD, BoundKind.CONIC_BUNDLE_REMARK):
        return _replay_threshold(h, cert)
    replayed = _SCALAR_RECOMPUTE[cert.kind](h)
    if replayed is None or replayed.integer_value != cert.integer_value:
        return False
    if cert.is_exact:
        return replayed.value == cert.value
    return abs(float(replayed.value) - float(cert.value)) <= config.FLOAT_TOLERANCE

