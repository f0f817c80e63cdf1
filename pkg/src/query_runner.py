# -*- coding: utf-8 -*-
"""
查询执行模块

静态结构按脚本逐行执行查询；流结构按流文件逐个推入，并在脚本指定的时刻（或每次推入后）查询。
带校验时每个答案都与参照实现比较。
"""
from typing import Any, Callable, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from tqdm import tqdm

from .data_loader import QueryLine, StreamQuery, script_order
from .errors import RangeError, NotFoundError, ValidationError, ParameterError
from .oracle import (ShadowStream, o_rank, o_select, bits_verdict, multiset_verdict, sequence_verdict,
                     stream_verdict)
from .structures import (PlainBitVector, SparseBitVector, DRankSelectA, RankDSelectA, MultisetFixedM,
                         MultisetFixedMRD, MultisetBoundedFreq, SeqApprox, BinaryStreamExact,
                         BinaryStreamApprox, IntStreamExact, SsaSketch, Estimate)

QUERY_COLUMNS = ["line", "op", "args", "answer", "in_interval", "error"]
STREAM_COLUMNS = ["t", "op", "i", "estimate_num", "estimate_den", "true_sum", "in_envelope", "error"]


class OpSpec(NamedTuple):
    """查询操作：适用的结构类型、调用方式与校验方式"""
    kinds: Tuple[type, ...]
    arity: int
    call: Callable[[Any, Tuple[int, ...]], int]
    verify: Optional[Callable[[Any, Any, Tuple[int, ...], int], Any]]


def _exact_bits(b: int, select: bool):
    def verify(structure, source, args, answer):
        i = args[0]
        expected = o_select(source, b, i) if select else o_rank(source, b, i)
        return answer == expected
    return verify


PLAIN_KINDS = (PlainBitVector, SparseBitVector)
MULTISET_DRANK_KINDS = (MultisetFixedM, MultisetBoundedFreq)

OPS: Dict[str, OpSpec] = {
    "rank0": OpSpec(PLAIN_KINDS, 1, lambda s, a: s.rank(0, a[0]), _exact_bits(0, False)),
    "rank1": OpSpec(PLAIN_KINDS, 1, lambda s, a: s.rank(1, a[0]), _exact_bits(1, False)),
    "select0": OpSpec(PLAIN_KINDS, 1, lambda s, a: s.select(0, a[0]), _exact_bits(0, True)),
    "select1": OpSpec(PLAIN_KINDS, 1, lambda s, a: s.select(1, a[0]), _exact_bits(1, True)),
    "access": OpSpec(PLAIN_KINDS, 1, lambda s, a: s.access(a[0]),
                     lambda s, src, a, ans: ans == int(src[a[0] - 1])),
    "dranka": OpSpec((DRankSelectA,), 1, lambda s, a: s.drank_a(a[0]),
                     lambda s, src, a, ans: bits_verdict("drank", src, a[0], s.delta, ans).ok),
    "selecta": OpSpec((DRankSelectA,), 1, lambda s, a: s.select_a(a[0]),
                      lambda s, src, a, ans: bits_verdict("select", src, a[0], s.delta, ans).ok),
    "ranka": OpSpec((RankDSelectA,), 1, lambda s, a: s.rank_a(a[0]),
                    lambda s, src, a, ans: bits_verdict("rank", src, a[0], s.delta, ans).ok),
    "dselecta": OpSpec((RankDSelectA,), 1, lambda s, a: s.dselect_a(a[0]),
                       lambda s, src, a, ans: bits_verdict("dselect", src, a[0], s.delta, ans).ok),
    "msdranka": OpSpec(MULTISET_DRANK_KINDS, 1, lambda s, a: s.drank_a(a[0]),
                       lambda s, src, a, ans: multiset_verdict("drank", src, a[0], s.delta, ans).ok),
    "msselecta": OpSpec(MULTISET_DRANK_KINDS, 1, lambda s, a: s.select_a(a[0]),
                        lambda s, src, a, ans: multiset_verdict("select", src, a[0], s.delta, ans).ok),
    "msranka": OpSpec((MultisetFixedMRD,), 1, lambda s, a: s.rank_a(a[0]),
                      lambda s, src, a, ans: multiset_verdict("rank", src, a[0], s.delta, ans).ok),
    "msdselecta": OpSpec((MultisetFixedMRD,), 1, lambda s, a: s.dselect_a(a[0]),
                         lambda s, src, a, ans: multiset_verdict("dselect", src, a[0], s.delta, ans).ok),
    "seqdranka": OpSpec((SeqApprox,), 2, lambda s, a: s.drank_a(a[0], a[1]),
                        lambda s, src, a, ans: sequence_verdict("drank", src, a[0], a[1], s.delta, ans).ok),
    "seqselecta": OpSpec((SeqApprox,), 2, lambda s, a: s.select_a(a[0], a[1]),
                         lambda s, src, a, ans: sequence_verdict("select", src, a[0], a[1], s.delta, ans).ok),
}

STREAM_OPS = {
    BinaryStreamExact: ("ss", "iss"),
    BinaryStreamApprox: ("ssa", "issa"),
    IntStreamExact: ("ss",),
    SsaSketch: ("ssa", "issa"),
}


class RunResult(NamedTuple):
    """执行结果"""
    rows: List[Dict[str, Any]]
    violations: int
    errors: int


def run_queries(structure: Any, queries: Iterable[QueryLine], source: Optional[Sequence[int]] = None,
                lenient: bool = False) -> RunResult:
    """
    执行静态结构的查询脚本

    Args:
        structure: 已构建的结构
        queries: 查询行
        source: 构建结构所用的原始数据；提供时逐行校验
        lenient: 为真时越界与不存在错误只记录在行内，否则直接抛出

    Returns:
        RunResult

    Raises:
        ValidationError: 未知操作、参数个数不符或操作不适用于该结构
        RangeError / NotFoundError: 非宽松模式下的查询错误
    """
    rows = []
    violations = 0
    errors = 0
    for query in queries:
        spec = OPS.get(query.op)
        if spec is None:
            raise ValidationError(f"第 {query.line_no} 行: 未知操作 {query.op}")
        if not isinstance(structure, spec.kinds):
            raise ValidationError(f"第 {query.line_no} 行: 操作 {query.op} 不适用于 {structure.kind}")
        if len(query.args) != spec.arity:
            raise ValidationError(f"第 {query.line_no} 行: 操作 {query.op} 需要 {spec.arity} 个参数")
        row = {"line": query.line_no, "op": query.op, "args": " ".join(map(str, query.args)),
               "answer": None, "in_interval": None, "error": ""}
        try:
            answer = spec.call(structure, query.args)
        except (RangeError, NotFoundError) as e:
            if not lenient:
                raise
            row["error"] = str(e)
            errors += 1
            rows.append(row)
            continue
        row["answer"] = answer
        if source is not None and spec.verify is not None:
            ok = bool(spec.verify(structure, source, query.args, answer))
            row["in_interval"] = ok
            violations += 0 if ok else 1
        rows.append(row)
    return RunResult(rows, violations, errors)


def create_stream(kind: str, n: int, delta: Optional[int] = None, ell: Optional[int] = None):
    """
    创建流结构

    Args:
        kind: 'bit'（给出 δ 时为近似结构）或 'int'（给出 δ 时为草图）

    Raises:
        ParameterError: 不支持的类型
    """
    kind = kind.lower()
    if kind == "bit":
        return BinaryStreamExact(n) if delta is None else BinaryStreamApprox(n, delta)
    if kind == "int":
        if ell is None:
            raise ParameterError("整数流需要参数 ℓ")
        return IntStreamExact(n, ell) if delta is None else SsaSketch(n, ell, delta)
    raise ParameterError(f"不支持的流类型: {kind}")


def _stream_answer(stream: Any, op: str, i: int):
    if op == "ss":
        return stream.ss(i)
    if op == "iss":
        return stream.iss(i)
    if op == "ssa":
        return stream.query(i) if isinstance(stream, SsaSketch) else stream.ss_a(i)
    if op == "issa":
        return stream.iss_a(i)
    raise ValidationError(f"未知的流操作: {op}")


def _stream_row(stream: Any, shadow: ShadowStream, op: str, i: int, verify: bool,
                lenient: bool) -> Dict[str, Any]:
    row = {"t": shadow.seen, "op": op, "i": i, "estimate_num": None, "estimate_den": None,
           "true_sum": None, "in_envelope": None, "error": ""}
    try:
        answer = _stream_answer(stream, op, i)
    except (RangeError, NotFoundError) as e:
        if not lenient:
            raise
        row["error"] = str(e)
        return row
    if isinstance(answer, Estimate):
        row["estimate_num"], row["estimate_den"] = answer.num, answer.den
        value = answer.value
    else:
        row["estimate_num"], row["estimate_den"] = answer, 1
        value = answer
    if not verify:
        return row
    delta = getattr(stream, "delta", 1)
    ell = getattr(stream, "ell", 1)
    try:
        if op in ("ss", "ssa"):
            row["true_sum"] = shadow.ss(i)
            verdict = stream_verdict("ss", shadow.history, shadow.n, i, delta if op == "ssa" else 1, value)
            row["in_envelope"] = verdict.ok if op == "ssa" else value == row["true_sum"]
        else:
            row["true_sum"] = shadow.iss(i)
            if op == "iss":
                row["in_envelope"] = value == row["true_sum"]
            else:
                verdict = stream_verdict("iss", shadow.history, shadow.n, i, delta, value,
                                         ell if isinstance(stream, SsaSketch) else 1)
                row["in_envelope"] = verdict.ok
    except NotFoundError:
        # 参照实现中也不存在该名次，答案不计入校验
        row["true_sum"] = None
    return row


def simulate_stream(stream: Any, values: Sequence[int], script: Optional[List[StreamQuery]] = None,
                    every: bool = False, verify: bool = False, lenient: bool = False,
                    quiet: bool = True) -> RunResult:
    """
    模拟流并执行查询

    Args:
        stream: 流结构
        values: 流元素
        script: 流脚本查询，t 为已推入的元素个数，None 表示全部推入之后；t 超出 1..len(values) 时报错
        every: 为真时每次推入后对全部合法 i 执行该结构支持的全部查询
        verify: 是否与参照实现比较
        lenient: 为真时查询错误只记录在行内
        quiet: 为假时显示进度条

    Returns:
        RunResult
    """
    supported = STREAM_OPS[type(stream)]
    shadow = ShadowStream(stream.n)
    pending = []
    for q in script or []:
        if q.op not in supported:
            raise ValidationError(f"第 {q.line_no} 行: 操作 {q.op} 不适用于该流结构")
        t = len(values) if q.t is None else q.t
        if t < 1 or t > len(values):
            raise ValidationError(f"第 {q.line_no} 行: 推入次数 {t} 不在 1..{len(values)} 之间")
        pending.append(q._replace(t=t))
    pending.sort(key=script_order)
    push = stream.add if isinstance(stream, SsaSketch) else stream.push
    rows = []
    cursor = 0
    for value in tqdm(values, desc="流模拟", disable=quiet):
        push(int(value))
        shadow.push(int(value))
        while cursor < len(pending) and pending[cursor].t == shadow.seen:
            q = pending[cursor]
            rows.append(_stream_row(stream, shadow, q.op, q.i, verify, lenient))
            cursor += 1
        if every:
            total = shadow.ss(shadow.window)
            for op in supported:
                limit = shadow.window if op in ("ss", "ssa") else total
                for i in range(1, limit + 1):
                    rows.append(_stream_row(stream, shadow, op, i, verify, True))
    violations = sum(1 for row in rows if row["in_envelope"] is False)
    errors = sum(1 for row in rows if row["error"])
    return RunResult(rows, violations, errors)
