# -*- coding: utf-8 -*-
"""
命令行入口

子命令：build（构建并保存结构）、query（执行查询脚本）、bench（基准网格）、
audit（空间审计）、stream-sim（流模拟）。CSV 写到 --out 或标准输出，状态行写到标准错误。
"""
import argparse
import sys
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from config.config import (DEFAULT_SEED, APPROXRS_THREADS, EXIT_OK, EXIT_IO, EXIT_VALIDATION,
                           EXIT_QUERY, EXIT_VERIFY)
from . import data_loader, serializer
from .benchmark import BENCH_KINDS, DEFAULT_QUERIES, DEFAULT_REPEAT, build_grid, latency_flatness, run_bench
from .errors import ValidationError, ParameterError, FormatError, RangeError, NotFoundError
from .query_runner import QUERY_COLUMNS, STREAM_COLUMNS, create_stream, run_queries, simulate_stream
from .space_audit import STREAM_KINDS, audit_formula, audit_structure
from .structures import BUILD_KINDS, StructureFactory

BITS_KINDS = ("plain", "drank-select", "rank-dselect")
MULTISET_KINDS = ("multiset", "multiset-rd", "bounded-freq")


class Console:
    """状态行输出，--quiet 时静默"""

    def __init__(self, quiet: bool = False):
        self.quiet = quiet

    def info(self, message: str) -> None:
        if not self.quiet:
            print(message, file=sys.stderr)

    def error(self, message: str) -> None:
        print(message, file=sys.stderr)


def load_input(kind: str, path: str, as_bytes: bool = False) -> np.ndarray:
    """
    按结构类型读取输入文件

    Returns:
        位串、频率数组或符号序列

    Raises:
        FileNotFoundError: 文件不存在
        ValidationError: 内容不合法
        ParameterError: 不支持的类型
    """
    if kind in BITS_KINDS:
        return data_loader.load_bits(path)
    if kind == "sparse":
        if path.lower().endswith(data_loader.RAW_SUFFIXES):
            return data_loader.load_bits(path)
        return data_loader.load_positions(path)
    if kind in MULTISET_KINDS:
        return data_loader.load_multiset(path)
    if kind == "sequence":
        symbols, _ = data_loader.load_sequence(path, as_bytes)
        return symbols
    raise ParameterError(f"不支持的结构类型: {kind}")


def write_csv(rows: Sequence[Dict[str, Any]], columns: List[str], out: Optional[str]) -> None:
    """写出 CSV；out 为空时写到标准输出"""
    frame = pd.DataFrame(list(rows), columns=columns)
    if out:
        data_loader.ensure_parent(out)
        frame.to_csv(out, index=False)
    else:
        frame.to_csv(sys.stdout, index=False)


def _sequence_sigma(args: argparse.Namespace, symbols: np.ndarray) -> int:
    if args.sigma is not None:
        return args.sigma
    if args.bytes:
        return 256
    return int(symbols.max()) if symbols.size else 1


def cmd_build(args: argparse.Namespace, console: Console) -> int:
    data = load_input(args.kind, args.input, args.bytes)
    sigma = _sequence_sigma(args, data) if args.kind == "sequence" else None
    console.info(f"⏳ 正在构建 {args.kind}（输入 {args.input}）...")
    structure = StructureFactory.create(args.kind, data, delta=args.delta, ell=args.ell, sigma=sigma,
                                        sparse=args.sparse or None)
    serializer.save(args.out, structure)
    report = audit_structure(structure)
    console.info(f"✅ 已保存到 {args.out}")
    ratio = "-" if report.upper_ratio is None else f"{float(report.upper_ratio):.4f}"
    console.info(f"📊 空间: {report.measured_bits} 位，上界公式 {report.upper_formula_bits:.1f} 位，比值 {ratio}")
    if report.substituted:
        console.info("⚠️ 该结构使用替代表示，下界仅作参考")
    if args.audit_out:
        write_csv([report.to_row()], list(report.to_row()), args.audit_out)
    return EXIT_OK


def cmd_query(args: argparse.Namespace, console: Console) -> int:
    structure = serializer.load(args.structure)
    queries = data_loader.load_query_script(args.script)
    source = None
    if args.verify:
        if not args.source:
            raise ValidationError("--verify 需要 --source 指定构建时的输入文件")
        source = load_input(args.source_kind or structure.kind, args.source, args.bytes)
    console.info(f"🚀 在 {structure.kind} 上执行 {len(queries)} 条查询")
    result = run_queries(structure, queries, source, lenient=args.lenient)
    write_csv(result.rows, QUERY_COLUMNS, args.out)
    if result.errors:
        console.info(f"⚠️ {result.errors} 条查询出错（已记录在行内）")
    if args.verify:
        if result.violations:
            console.error(f"❌ {result.violations} 条答案不在合法区间内")
            return EXIT_VERIFY
        console.info("✅ 全部答案通过校验")
    return EXIT_OK


def cmd_bench(args: argparse.Namespace, console: Console) -> int:
    cells = build_grid(args.kind, args.n, args.delta or [None], args.ell or [None], args.sigma or [None],
                       seed=args.seed)
    console.info(f"🚀 基准网格 {len(cells)} 个单元，线程数上限 {args.threads}")
    frame = run_bench(cells, queries=args.queries, max_workers=args.threads, quiet=args.quiet, repeat=args.repeat)
    write_csv(frame.to_dict("records"), list(frame.columns), args.out)
    console.info(f"✅ 基准完成，共 {len(frame)} 行（每单元 {args.repeat} 轮取中位数）")
    if args.flatness:
        small, large = args.flatness
        ratios = latency_flatness(frame, small, large)
        if ratios.empty:
            console.info(f"⚠️ 网格中没有 n={small} 与 n={large} 的同类单元")
        for row in ratios.itertuples(index=False):
            console.info(f"📊 {row.kind} {row.op}: p50 {row.small:.3f}us -> {row.large:.3f}us，比值 {row.ratio:.3f}")
    return EXIT_OK


def cmd_audit(args: argparse.Namespace, console: Console) -> int:
    if args.structure:
        report = audit_structure(serializer.load(args.structure))
    elif args.measure and args.kind in STREAM_KINDS:
        kind = "bit" if args.kind.startswith("bit") else "int"
        approx = args.kind in ("bit-stream-approx", "sketch")
        if approx and args.delta is None:
            raise ParameterError(f"{args.kind} 需要参数 δ")
        report = audit_structure(create_stream(kind, args.n, args.delta if approx else None, args.ell))
    elif args.kind:
        params = {key: getattr(args, key) for key in ("n", "m", "delta", "ell", "sigma")
                  if getattr(args, key) is not None}
        report = audit_formula(args.kind, **params)
    else:
        raise ParameterError("audit 需要 --structure 或 --kind")
    row = report.to_row()
    for key, value in report.notes.items():
        row[f"note_{key}"] = value
    write_csv([row], list(row), args.out)
    if report.lower_formula_bits is not None:
        console.info(f"📊 {report.kind}: 下界公式 {report.lower_formula_bits:.1f} 位")
    return EXIT_OK


def cmd_stream_sim(args: argparse.Namespace, console: Console) -> int:
    values = data_loader.load_stream(args.input)
    script = data_loader.load_stream_script(args.script) if args.script else None
    stream = create_stream(args.kind, args.n, args.delta, args.ell)
    console.info(f"🚀 流模拟：{type(stream).__name__}，窗口 {args.n}，{len(values)} 个元素")
    result = simulate_stream(stream, values, script, every=args.every, verify=args.verify,
                             lenient=args.lenient, quiet=args.quiet)
    write_csv(result.rows, STREAM_COLUMNS, args.out)
    if args.verify:
        if result.violations:
            console.error(f"❌ {result.violations} 条答案不在合法区间内")
            return EXIT_VERIFY
        console.info("✅ 全部答案通过校验")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    """构建参数解析器"""
    parser = argparse.ArgumentParser(prog="approxrs", description="近似 rank/select 与滑动窗口后缀和工具")
    parser.add_argument("--quiet", action="store_true", help="不输出状态行")
    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build", help="由输入文件构建结构并保存")
    build.add_argument("--kind", required=True, choices=BUILD_KINDS)
    build.add_argument("--input", required=True, help="输入文件")
    build.add_argument("--out", required=True, help="结构文件输出路径")
    build.add_argument("--delta", type=int)
    build.add_argument("--ell", type=int)
    build.add_argument("--sigma", type=int)
    build.add_argument("--bytes", action="store_true", help="序列输入按字节读取")
    build.add_argument("--sparse", action="store_true", help="强制使用稀疏位向量")
    build.add_argument("--audit-out", help="空间审计 CSV 输出路径")
    build.set_defaults(handler=cmd_build)

    query = sub.add_parser("query", help="在已保存的结构上执行查询脚本")
    query.add_argument("--structure", required=True, help="结构文件")
    query.add_argument("--script", required=True, help="查询脚本")
    query.add_argument("--out", help="CSV 输出路径，默认标准输出")
    query.add_argument("--verify", action="store_true", help="与参照实现比较")
    query.add_argument("--source", help="构建时的输入文件（--verify 需要）")
    query.add_argument("--source-kind", choices=BUILD_KINDS, help="输入文件的格式类型，默认取结构类型")
    query.add_argument("--bytes", action="store_true")
    query.add_argument("--lenient", action="store_true", help="查询错误只记录在行内")
    query.set_defaults(handler=cmd_query)

    bench = sub.add_parser("bench", help="基准网格")
    bench.add_argument("--kind", nargs="+", required=True, choices=BENCH_KINDS)
    bench.add_argument("--n", nargs="+", type=int, required=True)
    bench.add_argument("--delta", nargs="+", type=int)
    bench.add_argument("--ell", nargs="+", type=int)
    bench.add_argument("--sigma", nargs="+", type=int)
    bench.add_argument("--queries", type=int, default=DEFAULT_QUERIES)
    bench.add_argument("--repeat", type=int, default=DEFAULT_REPEAT, help="每个单元的轮数，分位数取中位数")
    bench.add_argument("--flatness", nargs=2, type=int, metavar=("SMALL", "LARGE"),
                       help="在标准错误输出两个规模下 p50 延迟的比值")
    bench.add_argument("--threads", type=int, default=APPROXRS_THREADS)
    bench.add_argument("--seed", type=int, default=DEFAULT_SEED)
    bench.add_argument("--out", help="CSV 输出路径，默认标准输出")
    bench.set_defaults(handler=cmd_bench)

    audit = sub.add_parser("audit", help="空间审计")
    audit.add_argument("--structure", help="结构文件（measured 模式）")
    audit.add_argument("--kind", choices=BUILD_KINDS + STREAM_KINDS, help="类型（formula 模式）")
    audit.add_argument("--measure", action="store_true", help="流类型：创建结构并测量")
    audit.add_argument("--n", type=int)
    audit.add_argument("--m", type=int)
    audit.add_argument("--delta", type=int)
    audit.add_argument("--ell", type=int)
    audit.add_argument("--sigma", type=int)
    audit.add_argument("--out", help="CSV 输出路径，默认标准输出")
    audit.set_defaults(handler=cmd_audit)

    stream = sub.add_parser("stream-sim", help="流模拟")
    stream.add_argument("--kind", required=True, choices=("bit", "int"))
    stream.add_argument("--input", required=True, help="流文件")
    stream.add_argument("--n", type=int, required=True, help="窗口容量")
    stream.add_argument("--delta", type=int, help="给出时使用近似结构")
    stream.add_argument("--ell", type=int)
    stream.add_argument("--script", help="\"@t op i\" 查询脚本")
    stream.add_argument("--every", action="store_true", help="每次推入后查询全部合法 i")
    stream.add_argument("--verify", action="store_true")
    stream.add_argument("--lenient", action="store_true")
    stream.add_argument("--out", help="CSV 输出路径，默认标准输出")
    stream.set_defaults(handler=cmd_stream_sim)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    命令行主函数

    Returns:
        退出码：0 成功，1 I/O 失败，2 输入或参数错误，3 查询越界或不存在，4 校验失败
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    console = Console(args.quiet)
    try:
        return args.handler(args, console)
    except (ValidationError, ParameterError, FormatError) as e:
        console.error(f"❌ 输入错误: {e}")
        return EXIT_VALIDATION
    except (RangeError, NotFoundError) as e:
        console.error(f"❌ 查询失败: {e}")
        return EXIT_QUERY
    except OSError as e:
        console.error(f"❌ 文件读写失败: {e}")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
