# -*- coding: utf-8 -*-
"""
Fibering Genus Bound Certifier - 掃描模組
(n, d) 網格評估、引言表格重現，以及暴力枚舉的對照器 (oracle)
"""

import time
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np

from src.bounds import (
    BoundKind, Hypersurface, Report, best_degeneration_bound, best_threshold_bound,
    combined_bound, conic_bundle_threshold, tate_smooth_guarantee,
)
from src.error_handler import ArgumentError
from src.logger import get_logger
from src.numeric import Rat, ceil_div, format_rat
from src.primes import primes_up_to

logger = get_logger("Sweep")

INTRO_TABLE_MAX_PRIME = 19


@dataclass(frozen=True)
class GridCell:
    """網格中的一格：(n, d) 的最佳下界與上界"""
    n: int
    d: int
    best_lower: int
    best_kind: Optional[BoundKind]
    upper_genus: int
    closed_form: float

    @classmethod
    def from_report(cls, report: Report) -> "GridCell":
        closed_form = next(
            cert.value for cert in report.certificates if cert.kind is BoundKind.CLOSED_FORM
        )
        return cls(
            n=report.hypersurface.n,
            d=report.hypersurface.d,
            best_lower=report.best_lower,
            best_kind=report.best_kind,
            upper_genus=report.upper_genus,
            closed_form=float(closed_form),
        )


@dataclass(frozen=True)
class TableRow:
    """
    引言表格的一列

    Attributes:
        guaranteed_fibgen: 保證的 fib.gen 下界
        prime: 使用的質數 p
        offset: 精確門檻 d_min(n) = p⌈(n + offset)/(p+1)⌉ 中的位移
        source: 門檻來源（GenusThreshold 或 ConicBundleRemark）
    """
    guaranteed_fibgen: int
    prime: int
    offset: int
    source: BoundKind

    @property
    def asymptotic_degree_numerator(self) -> int:
        return self.prime

    @property
    def asymptotic_degree_denominator(self) -> int:
        return self.prime + 1

    @property
    def asymptotic_ratio(self) -> Rat:
        return Rat(self.prime, self.prime + 1)

    @property
    def exact_threshold_formula(self) -> str:
        return f"{self.prime}*ceil((n+{self.offset})/{self.prime + 1})"

    def exact_threshold(self, n: int) -> int:
        """d_min(n) = p⌈(n + offset)/(p+1)⌉"""
        return self.prime * ceil_div(n + self.offset, self.prime + 1)

    def to_dict(self) -> Dict:
        return {
            "fibgen_ge": self.guaranteed_fibgen,
            "prime": self.prime,
            "asymptotic_ratio": format_rat(self.asymptotic_ratio),
            "exact_threshold": self.exact_threshold_formula,
        }


@dataclass(frozen=True)
class Discrepancy:
    """最佳化實作與暴力枚舉不一致的一格"""
    n: int
    d: int
    component: str
    expected: str
    actual: str

    def __str__(self) -> str:
        return f"{self.component} (n={self.n}, d={self.d}): oracle={self.expected}, optimized={self.actual}"


@dataclass(frozen=True)
class SpotCheckViolation:
    """門檻定理抽查失敗的一格"""
    n: int
    d: int
    required: int
    actual: int

    def __str__(self) -> str:
        return f"(n={self.n}, d={self.d}): best_lower={self.actual} < {self.required}"


# ==================== 引言表格 ====================

def intro_table() -> List[TableRow]:
    """
    從門檻定理與 conic bundle 門檻推導引言表格

    p = 3 由 conic bundle 門檻給出 fib.gen ≥ 1；p ≥ 5 取 g = ⌊(p−3)/2⌋，
    也就是 p ≥ 2g+3 仍成立的最大 g，保證 fib.gen ≥ g+1。
    """
    rows: List[TableRow] = []
    for p in primes_up_to(INTRO_TABLE_MAX_PRIME):
        if p == 2:
            continue
        if p == 3:
            # 3⌈(n+3)/4⌉
            rows.append(TableRow(guaranteed_fibgen=1, prime=3, offset=3,
                                 source=BoundKind.CONIC_BUNDLE_REMARK))
            continue
        g = (p - 3) // 2
        if not tate_smooth_guarantee(g, p):
            continue
        rows.append(TableRow(guaranteed_fibgen=g + 1, prime=p, offset=(g + 5) // 2,
                             source=BoundKind.GENUS_THRESHOLD))
    return rows


# ==================== 網格 ====================

def _validate_rectangle(n_min: int, n_max: int, d_min: int, d_max: int):
    if not 3 <= n_min <= n_max:
        raise ArgumentError(f"n 範圍不合法: 需要 3 ≤ n_min ≤ n_max (收到 {n_min}..{n_max})")
    if not 1 <= d_min <= d_max:
        raise ArgumentError(f"d 範圍不合法: 需要 1 ≤ d_min ≤ d_max (收到 {d_min}..{d_max})")


def grid(n_min: int, n_max: int, d_min: int, d_max: int) -> List[GridCell]:
    """
    評估矩形範圍內每一格的 combined_bound

    輸出順序固定為 n 外層、d 內層。

    Raises:
        ArgumentError: 矩形範圍不合法
    """
    _validate_rectangle(n_min, n_max, d_min, d_max)
    logger.phase_start("網格評估", f"n={n_min}..{n_max}, d={d_min}..{d_max}")
    start = time.time()
    cells = [
        GridCell.from_report(combined_bound(Hypersurface(n, d)))
        for n in range(n_min, n_max + 1)
        for d in range(d_min, d_max + 1)
    ]
    logger.info(f"📐 共 {len(cells)} 格 ({time.time() - start:.2f}秒)")
    logger.phase_end("網格評估")
    return cells


# ==================== 暴力對照 ====================

def _oracle_degeneration(n: int, d_max: int, primes: np.ndarray) -> Dict[int, Optional[tuple]]:
    """
    對所有 (p, e, d) 暴力求 min{p−2, 4γ−2}（兩倍值，保持整數）

    argmax 以列優先順序取第一個最大值，也就是最小的 p、再最小的 e。
    """
    e = np.arange(1, d_max + 1, dtype=np.int64)
    d = np.arange(1, d_max + 1, dtype=np.int64)
    p_col = primes[:, None]
    gam = p_col * e[None, :] + e[None, :] - n - 1
    doubled = np.minimum(p_col - 2, 4 * gam - 2)
    pe = p_col * e[None, :]
    valid = (gam >= 2)[:, :, None] & (pe[:, :, None] <= d[None, None, :])
    values = np.where(valid, doubled[:, :, None], -1).reshape(-1, d.size)
    flat_best = values.argmax(axis=0)
    best_values = values[flat_best, np.arange(d.size)]

    results: Dict[int, Optional[tuple]] = {}
    for j, degree in enumerate(d.tolist()):
        if best_values[j] < 0:
            results[degree] = None
            continue
        p_idx, e_idx = divmod(int(flat_best[j]), e.size)
        results[degree] = (Rat(int(best_values[j]), 2), int(primes[p_idx]), int(e[e_idx]))
    return results


def _oracle_threshold(n: int, d_max: int, primes: np.ndarray) -> Dict[int, Optional[tuple]]:
    """對所有 (g, p, d) 暴力檢查門檻不等式，再退回 conic bundle 門檻"""
    g = np.arange(1, d_max + 1, dtype=np.int64)
    d = np.arange(1, d_max + 1, dtype=np.int64)
    g_col = g[:, None]
    p_row = primes[None, :]
    degree_needed = p_row * -(-(n + (g_col + 5) // 2) // (p_row + 1))
    usable = p_row >= 2 * g_col + 3
    feasible = usable[:, :, None] & (degree_needed[:, :, None] <= d[None, None, :])
    any_prime = feasible.any(axis=1)
    conic = conic_bundle_threshold(n)

    results: Dict[int, Optional[tuple]] = {}
    for j, degree in enumerate(d.tolist()):
        genus_rows = np.flatnonzero(any_prime[:, j])
        if genus_rows.size:
            g_idx = int(genus_rows[-1])
            p_idx = int(np.argmax(feasible[g_idx, :, j]))
            results[degree] = (Rat(int(g[g_idx]) + 1), int(primes[p_idx]), int(g[g_idx]))
        elif degree >= conic:
            results[degree] = (Rat(1), 3, 0)
        else:
            results[degree] = None
    return results


def _describe(cert) -> str:
    if cert is None:
        return "absent"
    w = cert.witness
    if cert.kind is BoundKind.DEGENERATION_MIN:
        return f"{format_rat(cert.value)}@p={w.p},e={w.e}"
    return f"{format_rat(cert.value)}@p={w.p},g={w.g}"


def _describe_expected(entry: Optional[tuple], component: str) -> str:
    if entry is None:
        return "absent"
    value, p, other = entry
    label = "e" if component == "degeneration" else "g"
    return f"{format_rat(value)}@p={p},{label}={other}"


def oracle_check(n_max: int, d_max: int) -> List[Discrepancy]:
    """
    以未剪枝的完整枚舉重算 best_degeneration_bound 與 best_threshold_bound，
    回傳與最佳化實作不一致的格子（預期為空）

    兩者都比較數值與見證（同值時的 p、e、g 選擇規則也必須一致）。
    """
    logger.phase_start("暴力對照", f"n=3..{n_max}, d=1..{d_max}")
    discrepancies: List[Discrepancy] = []
    primes = primes_up_to(max(d_max, 2)).primes
    for n in range(3, n_max + 1):
        expected = {
            "degeneration": _oracle_degeneration(n, d_max, primes),
            "threshold": _oracle_threshold(n, d_max, primes),
        }
        for degree in range(1, d_max + 1):
            h = Hypersurface(n, degree)
            actual = {
                "degeneration": best_degeneration_bound(h),
                "threshold": best_threshold_bound(h),
            }
            for component, cert in actual.items():
                want = _describe_expected(expected[component][degree], component)
                got = _describe(cert)
                if want != got:
                    discrepancies.append(Discrepancy(n, degree, component, want, got))
    if discrepancies:
        logger.error(f"🚨 暴力對照發現 {len(discrepancies)} 處不一致，首例: {discrepancies[0]}")
    logger.phase_end("暴力對照", success=not discrepancies)
    return discrepancies


# ==================== 門檻抽查 ====================

def theorem_a_spot_check(n_max: int) -> List[SpotCheckViolation]:
    """
    對 3 ≤ n ≤ n_max，從各門檻到兩倍門檻的每個 d，
    確認 d ≥ 5⌈(n+3)/6⌉ 時最佳下界 ≥ 2、d ≥ 3⌈(n+3)/4⌉ 時 ≥ 1

    最佳下界不小於門檻元件的值，因此先只算門檻元件；不足時才算完整的 combined_bound。
    """
    violations: List[SpotCheckViolation] = []
    for n in range(3, n_max + 1):
        genus_two = 5 * ceil_div(n + 3, 6)
        genus_one = conic_bundle_threshold(n)
        for degree in range(min(genus_one, genus_two), 2 * max(genus_one, genus_two) + 1):
            required = 2 if degree >= genus_two else 1
            if degree < genus_one and required == 1:
                continue
            h = Hypersurface(n, degree)
            cert = best_threshold_bound(h)
            best = cert.integer_value if cert else 0
            if best < required:
                best = combined_bound(h).best_lower
            if best < required:
                violations.append(SpotCheckViolation(n, degree, required, best))
    return violations
