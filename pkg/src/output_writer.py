# -*- coding: utf-8 -*-
"""
Fibering Genus Bound Certifier - 輸出模組
把報告、表格、網格與門檻結果輸出成 human / csv / json 文字，並以原子方式寫檔
"""

import csv
import io
import json
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

from config.config import config
from src.bounds import BoundCertificate, Report
from src.checks import CheckReport
from src.error_handler import ErrorType, OutputError, error_handler_decorator
from src.logger import get_logger
from src.numeric import round_down
from src.sweep import GridCell, TableRow

logger = get_logger("OutputWriter")

GRID_CSV_HEADER = ("n", "d", "best_lower", "best_kind", "upper_genus", "closed_form")
TABLE_CSV_HEADER = ("fibgen_ge", "prime", "asymptotic_ratio", "exact_threshold")
NO_KIND = "none"


@dataclass(frozen=True)
class ThresholdResult:
    """threshold 子命令的結果：最小次數與兩側的驗證"""
    n: int
    g: int
    d_min: int
    p: int
    holds_at_d_min: bool
    holds_below: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "g": self.g,
            "d_min": self.d_min,
            "p": self.p,
            "holds_at_d_min": self.holds_at_d_min,
            "holds_at_d_min_minus_1": self.holds_below,
        }


# ==================== 共用 ====================

def _to_json(data: Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def _to_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _describe_witness(cert: BoundCertificate) -> str:
    if cert.witness is None:
        return "-"
    parts = [f"{k}={v}" for k, v in cert.witness.to_dict().items() if k not in ("type", "bertrand")]
    bertrand = getattr(cert.witness, "bertrand", None)
    if bertrand is not None:
        parts.append(f"bertrand=(p={bertrand.p}, e={bertrand.e}, gamma={bertrand.gamma})")
    return ", ".join(parts)


# ==================== 報告 ====================

def render_report(report: Report, fmt: str = "human", places: int = config.DISPLAY_DECIMALS) -> str:
    """
    輸出 combined_bound 報告

    human 格式每張證書一行，最後是最佳無條件下界與上界；json 格式的鍵順序固定。
    """
    if fmt == "json":
        return _to_json(report.to_dict(places))
    if fmt == "csv":
        rows = [
            (report.hypersurface.n, report.hypersurface.d, cert.direction.value, cert.kind.value,
             cert.display_value(places), cert.integer_value,
             cert.hypothesis.value if cert.hypothesis else "",
             cert.conditional_note or "")
            for cert in report.certificates
        ]
        header = ("n", "d", "direction", "kind", "value", "integer_value", "hypothesis", "conditional_note")
        return _to_csv(header, rows)

    h = report.hypersurface
    lines = [f"X_{{{h.n},{h.d}}}: n={h.n}, d={h.d}, Fano index ι={h.fano_index}"]
    for cert in report.certificates:
        line = (f"  [{cert.direction.value}] {cert.kind.value}: value={cert.display_value(places)}"
                f" integer={cert.integer_value} witness=({_describe_witness(cert)})")
        if cert.hypothesis:
            line += f" hypothesis={cert.hypothesis.value}"
        if cert.conditional_note:
            line += f" conditional: {cert.conditional_note}"
        lines.append(line)
    kind = report.best_kind.value if report.best_kind else NO_KIND
    lines.append(f"best unconditional lower bound: fib.gen ≥ {report.best_lower} ({kind})")
    lines.append(f"upper bounds: fib.gen ≤ {report.upper_genus}, fib.gon ≤ {report.upper_gonality}")
    return "\n".join(lines) + "\n"


# ==================== 表格 ====================

def render_table(rows: List[TableRow], fmt: str = "human") -> str:
    """輸出引言表格；csv 表頭為 fibgen_ge,prime,asymptotic_ratio,exact_threshold"""
    if fmt == "json":
        return _to_json([row.to_dict() for row in rows])
    if fmt == "csv":
        return _to_csv(TABLE_CSV_HEADER, ([*row.to_dict().values()] for row in rows))
    lines = [f"{'fib.gen ≥':>10} {'p':>4} {'d ≳':>8}  exact threshold"]
    for row in rows:
        ratio = f"{row.prime}n/{row.prime + 1}"
        lines.append(f"{row.guaranteed_fibgen:>10} {row.prime:>4} {ratio:>8}  d ≥ {row.exact_threshold_formula}")
    return "\n".join(lines) + "\n"


# ==================== 網格 ====================

def _grid_row(cell: GridCell, places: int) -> List[Any]:
    return [
        cell.n,
        cell.d,
        cell.best_lower,
        cell.best_kind.value if cell.best_kind else NO_KIND,
        cell.upper_genus,
        str(round_down(cell.closed_form, places)),
    ]


def render_grid_csv(cells: List[GridCell], places: int = config.DISPLAY_DECIMALS) -> str:
    """網格 CSV：n,d,best_lower,best_kind,upper_genus,closed_form"""
    return _to_csv(GRID_CSV_HEADER, (_grid_row(cell, places) for cell in cells))


def render_grid_json(cells: List[GridCell], places: int = config.DISPLAY_DECIMALS) -> str:
    return _to_json([dict(zip(GRID_CSV_HEADER, _grid_row(cell, places))) for cell in cells])


def render_grid_human(cells: List[GridCell], places: int = config.DISPLAY_DECIMALS) -> str:
    lines = [f"{'n':>5} {'d':>5} {'best':>5} {'kind':<24} {'upper':>8} closed_form"]
    for cell in cells:
        n, d, best, kind, upper, closed_form = _grid_row(cell, places)
        lines.append(f"{n:>5} {d:>5} {best:>5} {kind:<24} {upper:>8} {closed_form}")
    return "\n".join(lines) + "\n"


# ==================== 門檻與檢查 ====================

def render_threshold(result: ThresholdResult, fmt: str = "human") -> str:
    if fmt == "json":
        return _to_json(result.to_dict())
    if fmt == "csv":
        data = result.to_dict()
        return _to_csv(tuple(data), [tuple(data.values())])
    verdict_at = "holds" if result.holds_at_d_min else "FAILS"
    verdict_below = "fails" if not result.holds_below else "HOLDS"
    return (
        f"fib.gen ≥ {result.g + 1} for very general X_{{{result.n},d}} once d ≥ {result.d_min} (p = {result.p})\n"
        f"  threshold at d = {result.d_min}: {verdict_at}\n"
        f"  threshold at d = {result.d_min - 1}: {verdict_below}\n"
    )


def render_check_report(report: CheckReport, fmt: str = "human") -> str:
    if fmt == "json":
        return _to_json(report.to_dict())
    lines = []
    for suite in report.suites:
        status = "PASS" if suite.passed else "FAIL"
        lines.append(f"{status} {suite.name} ({suite.checked} checks)")
        lines.extend(f"    {failure}" for failure in suite.failures)
    passed = len(report.suites) - len(report.failed_suites)
    lines.append(f"{passed}/{len(report.suites)} suites passed")
    return "\n".join(lines) + "\n"


# ==================== 寫檔 ====================

@error_handler_decorator(ErrorType.IO)
def write_atomic(path: Path, text: str) -> Path:
    """
    先寫入同目錄下的唯一暫存檔，再改名覆蓋目標檔案

    Raises:
        OutputError: 目錄不存在或不可寫
    """
    path = Path(path)
    temp_path: Optional[Path] = None
    try:
        with tempfile.NamedTemporaryFile(
            "w", encoding="utf-8", newline="", dir=path.parent,
            prefix=f".{path.name}.", suffix=".tmp", delete=False,
        ) as f:
            temp_path = Path(f.name)
            f.write(text)
        temp_path.replace(path)
    except OSError as e:
        if temp_path is not None and temp_path.exists():
            temp_path.unlink()
        raise OutputError(f"無法寫入 {path}: {e.strerror or e}") from e
    logger.debug(f"💾 已寫入 {path} ({len(text)} 字元)")
    return path


def emit(text: str, out_path: Optional[Path], stream=None) -> Optional[Path]:
    """有 --out 時原子寫檔，否則寫到 stdout"""
    if out_path is not None:
        return write_atomic(out_path, text)
    (stream or sys.stdout).write(text)
    return None
