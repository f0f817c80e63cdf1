# -*- coding: utf-8 -*-
"""
基准测试模块

按 类型 × n × δ × ℓ 网格生成随机工作负载，测量构建时间、查询延迟分位数、推入延迟与空间比值。
网格单元在线程池中并行执行，每个单元独占自己的结构。
"""
import threading
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from itertools import product
from typing import Any, Callable, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
import psutil
from tqdm import tqdm

from config.config import APPROXRS_THREADS, DEFAULT_SEED
from .errors import ParameterError
from .query_runner import create_stream
from .space_audit import audit_structure
from .structures import BUILD_KINDS, StructureFactory

STREAM_KINDS = ("bit-stream", "bit-stream-approx", "int-stream", "sketch")
BENCH_KINDS = BUILD_KINDS + STREAM_KINDS

BENCH_COLUMNS = ["kind", "n", "delta", "ell", "sigma", "seed", "repeat", "build_s", "op", "queries", "samples",
                 "query_p50_us", "query_p99_us", "push_p50_us", "push_p99_us", "measured_bits",
                 "upper_ratio", "lower_ratio", "rss_mb"]

# 每个单元的默认查询次数
DEFAULT_QUERIES = 2000
# 每个单元的默认轮数，分位数取各轮中位数
DEFAULT_REPEAT = 3


class BenchCell(NamedTuple):
    """网格中的一个单元"""
    kind: str
    n: int
    delta: Optional[int]
    ell: Optional[int]
    sigma: Optional[int]
    seed: int


def build_grid(kinds: Sequence[str], sizes: Sequence[int], deltas: Sequence[Optional[int]] = (None,),
               ells: Sequence[Optional[int]] = (None,), sigmas: Sequence[Optional[int]] = (None,),
               seed: int = DEFAULT_SEED) -> List[BenchCell]:
    """
    展开参数网格

    与类型无关的参数被忽略，重复单元只保留一个。

    Raises:
        ParameterError: 网格为空或类型不支持
    """
    if not kinds or not sizes:
        raise ParameterError("基准网格不能为空")
    cells = []
    seen = set()
    for kind, n, delta, ell, sigma in product(kinds, sizes, deltas or (None,), ells or (None,),
                                              sigmas or (None,)):
        kind = kind.lower()
        if kind not in BENCH_KINDS:
            raise ParameterError(f"不支持的基准类型: {kind}")
        cell = BenchCell(kind, int(n),
                         delta if kind not in ("plain", "sparse", "bit-stream", "int-stream") else None,
                         ell if kind in ("bounded-freq", "int-stream", "sketch") else None,
                         sigma if kind == "sequence" else None,
                         seed)
        if cell not in seen:
            seen.add(cell)
            cells.append(cell)
    return cells


def make_data(cell: BenchCell, rng: np.random.Generator) -> np.ndarray:
    """
    为单元生成输入数据：位串、频率数组、符号序列或流

    Raises:
        ParameterError: 缺少必要参数
    """
    n = cell.n
    if cell.kind in ("plain", "drank-select", "rank-dselect", "bit-stream", "bit-stream-approx"):
        return (rng.random(n) < 0.5).astype(np.uint8)
    if cell.kind == "sparse":
        return (rng.random(n) < 1 / 64).astype(np.uint8)
    if cell.kind in ("multiset", "multiset-rd"):
        return rng.integers(0, 4, size=n, dtype=np.int64)
    if cell.kind == "bounded-freq":
        _need(cell, "ell")
        return rng.integers(0, cell.ell + 1, size=n, dtype=np.int64)
    if cell.kind == "sequence":
        sigma = cell.sigma or 26
        return rng.integers(1, sigma + 1, size=n, dtype=np.int64)
    _need(cell, "ell")
    return rng.integers(0, cell.ell + 1, size=n, dtype=np.int64)


def _need(cell: BenchCell, name: str) -> None:
    if getattr(cell, name) is None:
        raise ParameterError(f"基准类型 {cell.kind} 需要参数 {name}")


def _static_workload(structure: Any, cell: BenchCell, rng: np.random.Generator,
                     count: int) -> List[Tuple[str, Callable[[int], Any], np.ndarray]]:
    """每个查询操作的 (名称, 调用, 参数数组)"""
    n = cell.n
    positions = rng.integers(1, n + 1, size=count)
    kind = cell.kind
    if kind in ("plain", "sparse"):
        ones = structure.ones
        ops = [("rank1", structure.rank1, positions)]
        if ones:
            ops.append(("select1", structure.select1, rng.integers(1, ones + 1, size=count)))
        return ops
    if kind == "sequence":
        # 固定查询符号 1
        ops = [("seqdranka", lambda i: structure.drank_a(1, i), positions)]
        occurrences = structure.count(1)
        if occurrences:
            ops.append(("seqselecta", lambda i: structure.select_a(1, i),
                        rng.integers(1, occurrences + 1, size=count)))
        return ops
    total = structure.m
    ranks = rng.integers(1, total + 1, size=count) if total else None
    if kind == "drank-select":
        ops = [("dranka", structure.drank_a, positions)]
        return ops + ([("selecta", structure.select_a, ranks)] if total else [])
    if kind == "rank-dselect":
        ops = [("ranka", structure.rank_a, positions)]
        return ops + ([("dselecta", structure.dselect_a, ranks)] if total else [])
    elements = rng.integers(1, n + 1, size=count)
    if kind in ("multiset", "bounded-freq"):
        ops = [("msdranka", structure.drank_a, elements)]
        return ops + ([("msselecta", structure.select_a, ranks)] if total else [])
    ops = [("msranka", structure.rank_a, elements)]
    return ops + ([("msdselecta", structure.dselect_a, ranks)] if total else [])


def _percentiles(samples: Iterable[float]) -> Tuple[Optional[float], Optional[float]]:
    arr = np.asarray(list(samples), dtype=np.float64)
    if arr.size == 0:
        return None, None
    p50, p99 = np.percentile(arr, [50, 99]) * 1e6
    return round(float(p50), 3), round(float(p99), 3)


def _median(values: Sequence[Optional[float]]) -> Optional[float]:
    """各轮结果的中位数"""
    values = [v for v in values if v is not None]
    return round(float(np.median(values)), 3) if values else None


def _timed(call: Callable[[int], Any], args: np.ndarray) -> List[float]:
    samples = []
    for arg in args:
        arg = int(arg)
        start = time.perf_counter()
        call(arg)
        samples.append(time.perf_counter() - start)
    return samples


def _space_fields(structure: Any) -> Dict[str, Any]:
    report = audit_structure(structure)
    return {
        "measured_bits": report.measured_bits,
        "upper_ratio": None if report.upper_ratio is None else round(float(report.upper_ratio), 6),
        "lower_ratio": None if report.lower_ratio is None else round(float(report.lower_ratio), 6),
    }


class _Rounds:
    """每个查询操作各轮的分位数"""

    def __init__(self):
        self.order: List[str] = []
        self.count: Dict[str, int] = {}
        self.samples: Dict[str, int] = {}
        self.p50: Dict[str, List[Optional[float]]] = {}
        self.p99: Dict[str, List[Optional[float]]] = {}

    def record(self, op: str, samples: List[float]) -> None:
        if op not in self.p50:
            self.order.append(op)
            self.count[op] = len(samples)
            self.samples[op] = 0
            self.p50[op], self.p99[op] = [], []
        p50, p99 = _percentiles(samples)
        self.samples[op] += len(samples)
        self.p50[op].append(p50)
        self.p99[op].append(p99)

    def rows(self, base: Dict[str, Any], build_s: float, push: Dict[str, Optional[float]],
             space: Dict[str, Any]) -> List[Dict[str, Any]]:
        return [{**base, "build_s": round(build_s, 6), "op": op, "queries": self.count[op],
                 "samples": self.samples[op], "query_p50_us": _median(self.p50[op]),
                 "query_p99_us": _median(self.p99[op]), **push, **space, "rss_mb": _rss_mb()}
                for op in self.order]


def run_cell(cell: BenchCell, queries: int = DEFAULT_QUERIES, repeat: int = DEFAULT_REPEAT) -> List[Dict[str, Any]]:
    """
    执行一个网格单元

    每轮重新构建结构并计时，各分位数取各轮的中位数。

    Args:
        cell: 单元参数
        queries: 每个操作每轮的查询次数
        repeat: 轮数

    Returns:
        每个查询操作一行的记录

    Raises:
        ParameterError: repeat < 1
    """
    if repeat < 1:
        raise ParameterError(f"重复轮数必须至少为 1: {repeat}")
    rng = np.random.default_rng([cell.seed, cell.n, cell.delta or 0, cell.ell or 0, cell.sigma or 0])
    data = make_data(cell, rng)
    base = {"kind": cell.kind, "n": cell.n, "delta": cell.delta, "ell": cell.ell, "sigma": cell.sigma,
            "seed": cell.seed, "repeat": repeat}
    if cell.kind in STREAM_KINDS:
        return _run_stream_cell(cell, data, rng, queries, repeat, base)

    rounds = _Rounds()
    builds = []
    workload = None
    for _ in range(repeat):
        start = time.perf_counter()
        structure = StructureFactory.create(cell.kind, data, delta=cell.delta, ell=cell.ell, sigma=cell.sigma)
        builds.append(time.perf_counter() - start)
        if workload is None:
            workload = [(op, args) for op, _, args in _static_workload(structure, cell, rng, queries)]
        calls = {op: call for op, call, _ in _static_workload(structure, cell, rng, 0)}
        for op, args in workload:
            rounds.record(op, _timed(calls[op], args))
    push = {"push_p50_us": None, "push_p99_us": None}
    return rounds.rows(base, float(np.median(builds)), push, _space_fields(structure))


def _run_stream_cell(cell: BenchCell, data: np.ndarray, rng: np.random.Generator, queries: int,
                     repeat: int, base: Dict[str, Any]) -> List[Dict[str, Any]]:
    kind = "bit" if cell.kind.startswith("bit") else "int"
    approx = cell.kind in ("bit-stream-approx", "sketch")
    if approx:
        _need(cell, "delta")
    # 推入两帧，使窗口跨越帧边界
    values = np.concatenate([data, data])
    lengths = rng.integers(1, cell.n + 1, size=queries)
    op = "ss" if not approx else "ssa"
    rounds = _Rounds()
    builds, push_p50, push_p99 = [], [], []
    for _ in range(repeat):
        start = time.perf_counter()
        stream = create_stream(kind, cell.n, cell.delta if approx else None, cell.ell)
        builds.append(time.perf_counter() - start)
        p50, p99 = _percentiles(_timed(stream.add if cell.kind == "sketch" else stream.push, values))
        push_p50.append(p50)
        push_p99.append(p99)
        if cell.kind == "sketch":
            call = stream.query
        else:
            call = stream.ss_a if approx else stream.ss
        rounds.record(op, _timed(call, lengths))
    push = {"push_p50_us": _median(push_p50), "push_p99_us": _median(push_p99)}
    return rounds.rows(base, float(np.median(builds)), push, _space_fields(stream))


def _rss_mb() -> float:
    return round(psutil.Process().memory_info().rss / (1024 * 1024), 2)


def run_bench(cells: Sequence[BenchCell], queries: int = DEFAULT_QUERIES, max_workers: Optional[int] = None,
              quiet: bool = True, repeat: int = DEFAULT_REPEAT) -> pd.DataFrame:
    """
    并行执行基准网格

    Args:
        cells: 网格单元
        queries: 每个操作每轮的查询次数
        max_workers: 线程数，默认取 APPROXRS_THREADS 且不超过单元数
        quiet: 为假时显示进度条
        repeat: 每个单元的轮数，分位数取各轮中位数

    Returns:
        按输入顺序排列的结果表
    """
    if not cells:
        raise ParameterError("基准网格不能为空")
    if repeat < 1:
        raise ParameterError(f"重复轮数必须至少为 1: {repeat}")
    workers = max(1, min(max_workers or APPROXRS_THREADS, len(cells)))
    results: Dict[int, List[Dict[str, Any]]] = {}
    lock = threading.Lock()
    progress_bar = tqdm(total=len(cells), desc="基准测试", disable=quiet)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = {executor.submit(run_cell, cell, queries, repeat): index for index, cell in enumerate(cells)}
        for future in as_completed(futures):
            rows = future.result()
            with lock:
                results[futures[future]] = rows
                progress_bar.update(1)
    progress_bar.close()
    ordered = [row for index in sorted(results) for row in results[index]]
    return pd.DataFrame(ordered, columns=BENCH_COLUMNS)


def latency_flatness(frame: pd.DataFrame, small_n: int, large_n: int) -> pd.DataFrame:
    """
    比较两个规模下的 p50 延迟，返回 (kind, op, delta, ell, sigma, small, large, ratio)

    查询取 query_p50_us；流单元另有一行 op = "push"，取 push_p50_us。
    """
    if "sigma" not in frame:
        frame = frame.assign(sigma=0)
    frame = frame.fillna({"delta": 0, "ell": 0, "sigma": 0})
    keys = ["kind", "op", "delta", "ell", "sigma"]
    queries = frame[["n", *keys, "query_p50_us"]].rename(columns={"query_p50_us": "p50"})
    if "push_p50_us" in frame:
        pushes = frame[frame["push_p50_us"].notna()][["n", *keys, "push_p50_us"]]
        pushes = pushes.rename(columns={"push_p50_us": "p50"}).assign(op="push")
        queries = pd.concat([queries, pushes.drop_duplicates(subset=["n", *keys])], ignore_index=True)
    small = queries[queries["n"] == small_n].set_index(keys)["p50"]
    large = queries[queries["n"] == large_n].set_index(keys)["p50"]
    joined = pd.concat({"small": small, "large": large}, axis=1).dropna()
    joined["ratio"] = joined["large"] / joined["small"]
    return joined.reset_index()
