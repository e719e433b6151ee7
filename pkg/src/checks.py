# -*- coding: utf-8 -*-
"""
Fibering Genus Bound Certifier - 性質測試組
check 子命令執行的所有驗收檢查：暴力對照、公式恆等式、一致性鏈與表格重現
"""

import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from config.config import config
from src.bounds import (
    CurveExample, Hypersurface, bertrand_degeneration_witness, calabi_yau_bound,
    closed_form_bound, combined_bound, conic_bundle_threshold, degeneration_bound,
    genus_threshold_holds, jensen_bound, replay_certificate, sharpness_example_genus,
    statement_proof_e_identity, tate_smooth_guarantee, theorem_b_bound, theta,
    theta_residual, threshold_degree,
)
from src.logger import get_logger
from src.primes import bertrand_gaps, primes_up_to, table_covering
from src.settings_manager import settings_manager
from src.sweep import intro_table, oracle_check, theorem_a_spot_check

logger = get_logger("Checks")

MAX_REPORTED_FAILURES = 10
INTRO_TABLE_PAIRS = ((1, 3), (2, 5), (3, 7), (5, 11), (6, 13), (8, 17), (9, 19))
CALABI_YAU_POINTS = ((70, 1.0), (16, 0.0))
CALABI_YAU_TOLERANCE = 1e-12


@dataclass(frozen=True)
class CheckLimits:
    """各測試組的範圍（預設取自 settings.json 的 check 區段）"""
    n_max: int = 120
    d_max: int = 240
    random_samples: int = 10000
    random_seed: int = 20240501
    random_n_max: int = 10000
    tate_g_max: int = 10000
    identity_n_max: int = 100
    identity_g_max: int = 20
    identity_p_max: int = 100
    spot_n_max: int = 200
    bertrand_theta_max: int = 1000000
    bertrand_theta_step: float = 0.37

    @classmethod
    def from_settings(cls, **overrides: Optional[int]) -> "CheckLimits":
        """
        讀取設定並套用非 None 的覆寫值

        覆寫 n_max 或 d_max 時，其餘範圍依網格面積比例（最多 1 倍）一起縮放，
        spot_n_max 與 identity_n_max 依 n_max 的比例縮放。
        """
        known = cls.__dataclass_fields__
        values = {k: v for k, v in settings_manager.get_check_settings().items() if k in known}
        given = {k: v for k, v in overrides.items() if v is not None}
        if given.keys() & {"n_max", "d_max"}:
            values.update(_scaled_ranges(
                values, given.get("n_max", values["n_max"]), given.get("d_max", values["d_max"]),
            ))
        values.update(given)
        return cls(**values)


# 隨網格面積縮放的範圍與其下限
AREA_SCALED_RANGES = {
    "random_samples": 1,
    "random_n_max": 3,
    "tate_g_max": 1,
    "bertrand_theta_max": 2,
}


def _scaled_ranges(base: Dict[str, Any], n_max: int, d_max: int) -> Dict[str, Any]:
    ratio = min(1.0, (n_max * d_max) / (base["n_max"] * base["d_max"]))
    scaled = {key: max(floor, int(base[key] * ratio)) for key, floor in AREA_SCALED_RANGES.items()}
    n_ratio = min(1.0, n_max / base["n_max"])
    scaled["spot_n_max"] = max(3, int(base["spot_n_max"] * n_ratio))
    scaled["identity_n_max"] = max(1, int(base["identity_n_max"] * n_ratio))
    return scaled


@dataclass(frozen=True)
class SuiteResult:
    """單一測試組的結果"""
    name: str
    passed: bool
    checked: int
    failures: Tuple[str, ...] = ()
    elapsed: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": list(self.failures),
        }


@dataclass
class CheckReport:
    """所有測試組的彙整"""
    limits: CheckLimits
    suites: List[SuiteResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(suite.passed for suite in self.suites)

    @property
    def failed_suites(self) -> List[SuiteResult]:
        return [suite for suite in self.suites if not suite.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "suites": [suite.to_dict() for suite in self.suites],
        }


class _Collector:
    """收集失敗訊息，只保留前幾筆"""

    def __init__(self):
        self.checked = 0
        self.failure_count = 0
        self.failures: List[str] = []

    def check(self, ok: bool, message: Callable[[], str]):
        self.checked += 1
        if not ok:
            self.failure_count += 1
            if len(self.failures) < MAX_REPORTED_FAILURES:
                self.failures.append(message())


def _random_hypersurfaces(limits: CheckLimits, stream: int) -> List[Hypersurface]:
    """以固定種子抽樣 3 ≤ n ≤ random_n_max、1 ≤ d ≤ 3n"""
    rng = np.random.default_rng([limits.random_seed, stream])
    ns = rng.integers(3, limits.random_n_max + 1, size=limits.random_samples)
    ds = rng.integers(1, 3 * ns + 1)
    return [Hypersurface(int(n), int(d)) for n, d in zip(ns, ds)]


# ==================== 測試組 ====================

def suite_oracle(limits: CheckLimits, collector: _Collector):
    discrepancies = oracle_check(limits.n_max, limits.d_max)
    collector.checked += 2 * (limits.n_max - 2) * limits.d_max
    for item in discrepancies:
        collector.check(False, lambda item=item: str(item))


def suite_statement_proof_identity(limits: CheckLimits, collector: _Collector):
    for p in primes_up_to(limits.identity_p_max):
        for n in range(1, limits.identity_n_max + 1):
            for g in range(1, limits.identity_g_max + 1):
                collector.check(statement_proof_e_identity(n, g, p),
                                lambda: f"e 恆等式不成立: n={n}, g={g}, p={p}")


def suite_closed_form_identities(limits: CheckLimits, collector: _Collector):
    tol = config.FLOAT_TOLERANCE
    for h in _random_hypersurfaces(limits, stream=0):
        closed_form = closed_form_bound(h).value
        collector.check(abs(closed_form - (theta(h) / 4 - 1)) <= tol,
                        lambda: f"封閉公式 ≠ θ/4 − 1: n={h.n}, d={h.d}")
        jensen = jensen_bound(h).value
        collector.check(jensen <= closed_form + tol,
                        lambda: f"Jensen 界限超過封閉公式: n={h.n}, d={h.d}, {jensen} > {closed_form}")
        by_root = theorem_b_bound(h)
        if by_root is not None:
            collector.check(by_root.value <= closed_form + tol,
                            lambda: f"√(n+2) 界限超過封閉公式: n={h.n}, d={h.d}")


def suite_calabi_yau_points(limits: CheckLimits, collector: _Collector):
    for n, expected in CALABI_YAU_POINTS:
        cert = calabi_yau_bound(n)
        collector.check(abs(cert.value - expected) <= CALABI_YAU_TOLERANCE,
                        lambda: f"calabi_yau_bound({n}) = {cert.value}, 預期 {expected}")
        collector.check(cert.integer_value == int(expected),
                        lambda: f"calabi_yau_bound({n}) 整數值 {cert.integer_value} ≠ {int(expected)}")


def suite_tate_sharpness(limits: CheckLimits, collector: _Collector):
    table = table_covering(2 * limits.tate_g_max + 3)
    for g in range(1, limits.tate_g_max + 1):
        collector.check(not table.is_prime(2 * g + 2), lambda: f"2g+2 = {2 * g + 2} 不是合數")
        collector.check(
            tate_smooth_guarantee(g, 2 * g + 3) and not tate_smooth_guarantee(g, 2 * g + 2),
            lambda: f"光滑保證沒有恰好在 p = 2g+3 翻轉: g={g}",
        )
        if table.is_prime(2 * g + 1):
            p = 2 * g + 1
            collector.check(
                sharpness_example_genus(CurveExample.ROSENLICHT, p) == g
                and not tate_smooth_guarantee(g, p),
                lambda: f"Rosenlicht 例子的虧格不是 g: p={p}, g={g}",
            )
    for p in (2, 3):
        collector.check(not tate_smooth_guarantee(sharpness_example_genus(CurveExample.QUASI_ELLIPTIC, p), p),
                        lambda: f"quasi-elliptic 例子不應在 p={p} 保證光滑")
    for p in primes_up_to(limits.identity_p_max):
        genus = sharpness_example_genus(CurveExample.FERMAT, p)
        collector.check(not tate_smooth_guarantee(genus, p),
                        lambda: f"Fermat 例子不應在 p={p} 保證光滑")


def suite_soundness_chain(limits: CheckLimits, collector: _Collector):
    for n in range(3, limits.n_max + 1):
        previous = 0
        for d in range(1, limits.d_max + 1):
            h = Hypersurface(n, d)
            report = combined_bound(h)
            collector.check(report.best_lower <= (d - 1) * (d - 2) // 2,
                            lambda: f"下界超過投影上界: n={n}, d={d}, {report.best_lower}")
            collector.check(report.best_lower >= previous,
                            lambda: f"最佳下界對 d 不單調: n={n}, d={d}, {previous} → {report.best_lower}")
            previous = report.best_lower
            for cert in report.certificates:
                collector.check(replay_certificate(h, cert),
                                lambda: f"證書重放失敗: n={n}, d={d}, {cert.kind.value}")


def suite_intro_table(limits: CheckLimits, collector: _Collector):
    rows = intro_table()
    pairs = tuple((row.guaranteed_fibgen, row.prime) for row in rows)
    collector.check(pairs == INTRO_TABLE_PAIRS, lambda: f"表格列不符: {pairs}")
    n_large = 10 ** 4
    for row in rows:
        collector.check(
            abs(row.exact_threshold(n_large) / n_large - float(row.asymptotic_ratio)) <= 0.01 * float(row.asymptotic_ratio),
            lambda: f"p={row.prime} 的門檻在 n={n_large} 偏離 p/(p+1) 超過 1%",
        )
        for n in range(3, limits.spot_n_max + 1):
            if row.guaranteed_fibgen == 1:
                expected = conic_bundle_threshold(n)
            else:
                g = row.guaranteed_fibgen - 1
                expected = threshold_degree(n, g, row.prime)
                collector.check(
                    genus_threshold_holds(n, expected, g, row.prime)
                    and not genus_threshold_holds(n, expected - 1, g, row.prime),
                    lambda: f"p={row.prime} 的門檻在 n={n} 不是最小值",
                )
            collector.check(row.exact_threshold(n) == expected,
                            lambda: f"p={row.prime} 的精確門檻在 n={n} 不符: {row.exact_threshold(n)} ≠ {expected}")


def suite_theorem_a_spot_checks(limits: CheckLimits, collector: _Collector):
    violations = theorem_a_spot_check(limits.spot_n_max)
    collector.checked += limits.spot_n_max - 2
    for item in violations:
        collector.check(False, lambda item=item: f"門檻抽查失敗 {item}")


def suite_bertrand_interval(limits: CheckLimits, collector: _Collector):
    theta_max = limits.bertrand_theta_max
    thetas = np.concatenate([
        np.arange(2.0, theta_max, limits.bertrand_theta_step),
        np.arange(2, theta_max + 1, dtype=np.float64),
    ])
    gaps = bertrand_gaps(table_covering(theta_max), thetas)
    collector.checked += int(thetas.size) - 1
    collector.check(gaps.size == 0, lambda: f"[θ/2, θ] 內沒有質數: θ = {gaps[:5].tolist()}")


def suite_bertrand_witness_domination(limits: CheckLimits, collector: _Collector):
    tol = config.FLOAT_TOLERANCE
    for n in range(3, limits.n_max + 1):
        for d in range(1, limits.d_max + 1):
            h = Hypersurface(n, d)
            witness = bertrand_degeneration_witness(h)
            if witness is None or witness.gamma < 2:
                continue
            bound = degeneration_bound(h, witness.p, witness.e)
            closed_form = closed_form_bound(h).value
            collector.check(
                bound is not None and float(bound.value) >= closed_form - tol,
                lambda: f"Bertrand 見證 (p={witness.p}, e={witness.e}) 低於封閉公式: n={n}, d={d}",
            )


def suite_theta_quadratic(limits: CheckLimits, collector: _Collector):
    tol = config.FLOAT_TOLERANCE
    for h in _random_hypersurfaces(limits, stream=1):
        residual = theta_residual(h)
        collector.check(abs(residual) <= tol * max(1.0, theta(h)),
                        lambda: f"θ 不滿足二次方程: n={h.n}, d={h.d}, 殘差 {residual}")


SUITES: Tuple[Tuple[str, Callable[[CheckLimits, _Collector], None]], ...] = (
    ("oracle", suite_oracle),
    ("statement_proof_identity", suite_statement_proof_identity),
    ("closed_form_identities", suite_closed_form_identities),
    ("calabi_yau_points", suite_calabi_yau_points),
    ("tate_sharpness", suite_tate_sharpness),
    ("soundness_chain", suite_soundness_chain),
    ("intro_table", suite_intro_table),
    ("theorem_a_spot_checks", suite_theorem_a_spot_checks),
    ("bertrand_interval", suite_bertrand_interval),
    ("bertrand_witness_domination", suite_bertrand_witness_domination),
    ("theta_quadratic", suite_theta_quadratic),
)


def run_suite(name: str, limits: CheckLimits) -> SuiteResult:
    """執行單一測試組；測試組內部的例外也視為失敗"""
    suite = dict(SUITES)[name]
    collector = _Collector()
    start = time.time()
    try:
        suite(limits, collector)
    except Exception as e:
        collector.check(False, lambda: f"{type(e).__name__}: {e}")
    elapsed = time.time() - start
    result = SuiteResult(
        name=name,
        passed=collector.failure_count == 0,
        checked=collector.checked,
        failures=tuple(collector.failures),
        elapsed=elapsed,
    )
    logger.suite_result(name, result.passed, result.checked, elapsed)
    return result


def run_all(limits: Optional[CheckLimits] = None, only: Optional[List[str]] = None) -> CheckReport:
    """
    執行所有（或指定的）性質測試組

    Args:
        limits: 測試範圍；預設取自 settings.json
        only: 只執行這些測試組名稱

    Returns:
        CheckReport: 各測試組結果
    """
    limits = limits or CheckLimits.from_settings()
    report = CheckReport(limits=limits)
    start = time.time()
    logger.create_separator("性質檢查")
    for name, _ in SUITES:
        if only and name not in only:
            continue
        report.suites.append(run_suite(name, limits))
    failed = len(report.failed_suites)
    logger.suite_summary(len(report.suites), len(report.suites) - failed, failed, time.time() - start)
    return report

