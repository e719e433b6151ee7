# -*- coding: utf-8 -*-
"""
Fibering Genus Bound Certifier - 命令列介面
子命令: bound / table / grid / threshold / check

stdout 只輸出結果（或以 --out 原子寫檔），日誌一律走 stderr。
結束碼: 0 成功、1 檢查未通過、2 用法或定理假設錯誤、3 檔案寫入失敗。
"""

import argparse
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

from src.bounds import Hypersurface, combined_bound, genus_threshold_holds, min_degree_for_genus
from src.checks import SUITES, CheckLimits, run_all
from src.error_handler import ArgumentError, ExitCode, FibgenError, handle_error
from src.logger import finalize_logging, get_logger, set_console_level
from src.output_writer import (
    ThresholdResult, emit, render_check_report, render_grid_csv, render_grid_human,
    render_grid_json, render_report, render_table, render_threshold,
)
from src.settings_manager import settings_manager
from src.svg_renderer import render_grid_svg
from src.sweep import grid, intro_table

logger = get_logger("CLI")

FORMATS = ("human", "json", "csv", "svg")


def _places() -> int:
    return int(settings_manager.get_output_settings().get("decimal_places", 6))


def _require_format(args: argparse.Namespace, allowed: tuple):
    if args.format not in allowed:
        raise ArgumentError(
            f"{args.command} 不支援 --format {args.format}",
            hint=f"可用格式: {', '.join(allowed)}",
        )


# ==================== 子命令 ====================

def cmd_bound(args: argparse.Namespace) -> ExitCode:
    """combined_bound 的證書報告"""
    _require_format(args, ("human", "json", "csv"))
    report = combined_bound(Hypersurface(args.n, args.d))
    emit(render_report(report, args.format, _places()), args.out)
    return ExitCode.SUCCESS


def cmd_table(args: argparse.Namespace) -> ExitCode:
    """引言表格"""
    _require_format(args, ("human", "json", "csv"))
    emit(render_table(intro_table(), args.format), args.out)
    return ExitCode.SUCCESS


def cmd_grid(args: argparse.Namespace) -> ExitCode:
    """網格評估，可輸出 svg 熱圖"""
    cells = grid(args.n_min, args.n_max, args.d_min, args.d_max)
    places = _places()
    renderers: Dict[str, Callable[[], str]] = {
        "csv": lambda: render_grid_csv(cells, places),
        "json": lambda: render_grid_json(cells, places),
        "svg": lambda: render_grid_svg(cells),
        "human": lambda: render_grid_human(cells, places),
    }
    written = emit(renderers[args.format](), args.out)
    if written is not None:
        logger.info(f"💾 網格輸出: {written}")
    return ExitCode.SUCCESS


def cmd_threshold(args: argparse.Namespace) -> ExitCode:
    """保證 fib.gen ≥ g+1 的最小次數，並驗證 d_min 與 d_min − 1 兩側"""
    _require_format(args, ("human", "json", "csv"))
    d_min, p = min_degree_for_genus(args.n, args.g)
    result = ThresholdResult(
        n=args.n,
        g=args.g,
        d_min=d_min,
        p=p,
        holds_at_d_min=genus_threshold_holds(args.n, d_min, args.g, p),
        holds_below=genus_threshold_holds(args.n, d_min - 1, args.g, p),
    )
    emit(render_threshold(result, args.format), args.out)
    if not result.holds_at_d_min or result.holds_below:
        logger.error(f"門檻驗證失敗: {result}")
        return ExitCode.CHECK_FAILED
    return ExitCode.SUCCESS


def cmd_check(args: argparse.Namespace) -> ExitCode:
    """執行性質測試組；全部通過才回傳 0"""
    _require_format(args, ("human", "json"))
    limits = CheckLimits.from_settings(n_max=args.n_max, d_max=args.d_max)
    if limits.n_max < 3 or limits.d_max < 1:
        raise ArgumentError(f"檢查範圍不合法: n_max={limits.n_max}, d_max={limits.d_max}")
    report = run_all(limits, only=args.suite)
    emit(render_check_report(report, args.format), args.out)
    return ExitCode.SUCCESS if report.passed else ExitCode.CHECK_FAILED


# ==================== 參數解析 ====================

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="human", help="輸出格式")
    common.add_argument("--out", type=Path, default=None, help="輸出檔案（原子寫入）；預設為 stdout")
    common.add_argument("--verbose", action="store_true", help="在 stderr 顯示 DEBUG 日誌")

    parser = argparse.ArgumentParser(
        prog="fibgen",
        description="Fibering genus bound certifier for very general hypersurfaces X_{n,d} ⊂ P^{n+1}",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    bound = subparsers.add_parser("bound", parents=[common], help="所有界限證書與最佳下界")
    bound.add_argument("--n", type=int, required=True, help="維度 n (≥ 3)")
    bound.add_argument("--d", type=int, required=True, help="次數 d (≥ 1)")
    bound.set_defaults(handler=cmd_bound)

    table = subparsers.add_parser("table", parents=[common], help="引言表格：保證 fib.gen 下界的質數門檻")
    table.set_defaults(handler=cmd_table)

    grid_parser = subparsers.add_parser("grid", parents=[common], help="(n, d) 網格上的最佳下界")
    grid_parser.add_argument("--n-min", type=int, required=True)
    grid_parser.add_argument("--n-max", type=int, required=True)
    grid_parser.add_argument("--d-min", type=int, required=True)
    grid_parser.add_argument("--d-max", type=int, required=True)
    grid_parser.set_defaults(handler=cmd_grid)

    threshold = subparsers.add_parser("threshold", parents=[common], help="保證 fib.gen ≥ g+1 的最小次數")
    threshold.add_argument("--n", type=int, required=True, help="維度 n (≥ 3)")
    threshold.add_argument("--g", type=int, required=True, help="虧格 g (≥ 1)")
    threshold.set_defaults(handler=cmd_threshold)

    check = subparsers.add_parser("check", parents=[common], help="執行性質測試組")
    check.add_argument("--n-max", type=int, default=None, help="網格類測試組的 n 上限")
    check.add_argument("--d-max", type=int, default=None, help="網格類測試組的 d 上限")
    check.add_argument("--suite", action="append", choices=[name for name, _ in SUITES],
                       help="只執行指定測試組（可重複）")
    check.set_defaults(handler=cmd_check)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """命令列入口；回傳結束碼"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse 的用法錯誤為 2，--help 為 0
        return int(e.code or 0)

    if args.verbose:
        set_console_level("DEBUG")
    logger.debug(f"▶️  子命令 {args.command}: {vars(args)}")

    try:
        return int(args.handler(args))
    except FibgenError as e:
        print(f"error: {e}", file=sys.stderr)
        return int(handle_error(e, args.command))
    except (ValueError, ArithmeticError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return int(handle_error(e, args.command))
    finally:
        finalize_logging()
