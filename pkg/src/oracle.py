# -*- coding: utf-8 -*-
"""
朴素参照实现与区间校验

所有函数按定义线性扫描，不复用结构模块的任何代码；位置与名次均从 1 开始。
"""
from fractions import Fraction
from typing import Any, Dict, List, NamedTuple, Sequence, Union

from .errors import RangeError, NotFoundError, ParameterError

Number = Union[int, Fraction]


class Verdict(NamedTuple):
    """区间校验结果：ok 为真当且仅当答案落在 (low, high] 内（或满足对应的等号条款）"""
    ok: bool
    low: Number
    high: Number
    message: str


def o_rank(bits: Sequence[int], b: int, i: int) -> int:
    """B[1..i] 中 b 的个数"""
    if i < 0 or i > len(bits):
        raise RangeError(f"位置越界: {i}（长度 {len(bits)}）")
    return sum(1 for x in bits[:i] if int(x) == b)


def o_select(bits: Sequence[int], b: int, i: int) -> int:
    """第 i 个 b 的位置；i ≤ 0 时按约定返回 0"""
    if i <= 0:
        return 0
    seen = 0
    for pos, x in enumerate(bits, start=1):
        if int(x) == b:
            seen += 1
            if seen == i:
                return pos
    raise NotFoundError(f"不存在第 {i} 个 {b}")


def o_ms_rank(freqs: Sequence[int], i: int) -> int:
    """多重集中不大于 i 的元素个数（计重数）"""
    if i < 0 or i > len(freqs):
        raise RangeError(f"元素越界: {i}（全集大小 {len(freqs)}）")
    return sum(int(f) for f in freqs[:i])


def o_ms_select(freqs: Sequence[int], i: int) -> int:
    """多重集第 i 小的元素；i ≤ 0 时返回 0"""
    if i <= 0:
        return 0
    acc = 0
    for element, f in enumerate(freqs, start=1):
        acc += int(f)
        if acc >= i:
            return element
    raise NotFoundError(f"不存在第 {i} 个元素")


def o_seq_rank(symbols: Sequence[int], j: int, i: int) -> int:
    """A[1..i] 中符号 j 的个数"""
    return o_rank([1 if int(x) == j else 0 for x in symbols], 1, i)


def o_seq_select(symbols: Sequence[int], j: int, i: int) -> int:
    """第 i 个符号 j 的位置；i ≤ 0 时返回 0"""
    return o_select([1 if int(x) == j else 0 for x in symbols], 1, i)


def o_ss(history: Sequence[int], n: int, i: int) -> int:
    """最近 i 个元素之和，窗口为最近 min(n, len) 个元素"""
    window = min(n, len(history))
    if i < 1 or i > window:
        raise RangeError(f"后缀长度越界: {i}（窗口长度 {window}）")
    return sum(int(x) for x in history[len(history) - i:])


def o_iss(history: Sequence[int], n: int, i: int) -> int:
    """最小的 j 使最近 j 个元素之和 ≥ i；i ≤ 0 时返回 0"""
    if i <= 0:
        return 0
    window = min(n, len(history))
    acc = 0
    for j in range(1, window + 1):
        acc += int(history[-j])
        if acc >= i:
            return j
    raise NotFoundError(f"窗口中元素之和不足 {i}")


class ShadowStream:
    """
    流的完整历史副本
    """

    def __init__(self, n: int):
        self.n = int(n)
        self.history: List[int] = []

    def push(self, x: int) -> None:
        self.history.append(int(x))

    @property
    def seen(self) -> int:
        return len(self.history)

    @property
    def window(self) -> int:
        return min(self.n, len(self.history))

    def window_values(self) -> List[int]:
        return self.history[len(self.history) - self.window:]

    def ss(self, i: int) -> int:
        return o_ss(self.history, self.n, i)

    def iss(self, i: int) -> int:
        return o_iss(self.history, self.n, i)


def validate_interval(kind: str, params: Dict[str, Any], answer: Number) -> Verdict:
    """
    校验答案是否落在近似查询的合法区间

    Args:
        kind: drank / dselect / ss 使用 params["exact"] 与 params["delta"]，区间 (exact-δ, exact]；
              rank 使用 exact 与 lower，区间 (lower, exact]，lower = exact 时答案必须等于 exact；
              select / iss 使用 exact 与 lower，区间 (lower, exact]
        params: 精确值参数
        answer: 待校验的答案

    Returns:
        Verdict
    """
    exact = params["exact"]
    if kind in ("drank", "dselect", "ss"):
        low = exact - params["delta"]
    elif kind in ("rank", "select", "iss"):
        low = params["lower"]
    else:
        raise ParameterError(f"不支持的校验类型: {kind}")
    if kind == "rank" and low == exact:
        ok = answer == exact
        return Verdict(ok, low, exact, "" if ok else f"{kind}: 区间退化，答案 {answer} 应等于 {exact}")
    ok = low < answer <= exact
    return Verdict(ok, low, exact, "" if ok else f"{kind}: 答案 {answer} 不在 ({low}, {exact}] 内")


def bits_verdict(op: str, bits: Sequence[int], i: int, delta: int, answer: int) -> Verdict:
    """位串近似查询的校验（op 为 drank / rank / select / dselect，按 1 计数）"""
    if op == "drank":
        return validate_interval("drank", {"exact": o_rank(bits, 1, i), "delta": delta}, answer)
    if op == "rank":
        lower = o_rank(bits, 1, max(i - delta, 0))
        return validate_interval("rank", {"exact": o_rank(bits, 1, i), "lower": lower}, answer)
    if op == "select":
        return validate_interval("select", {"exact": o_select(bits, 1, i),
                                            "lower": o_select(bits, 1, i - delta)}, answer)
    if op == "dselect":
        return validate_interval("dselect", {"exact": o_select(bits, 1, i), "delta": delta}, answer)
    raise ParameterError(f"不支持的校验类型: {op}")


def multiset_verdict(op: str, freqs: Sequence[int], i: int, delta: int, answer: int) -> Verdict:
    """
    多重集近似查询的校验

    select 另外接受覆盖条款：元素 answer 的名次区间 [F(p-1)+1, F(p)] 与 (i-δ, i] 相交。
    """
    if op == "drank":
        return validate_interval("drank", {"exact": o_ms_rank(freqs, i), "delta": delta}, answer)
    if op == "rank":
        lower = o_ms_rank(freqs, max(i - delta, 0))
        return validate_interval("rank", {"exact": o_ms_rank(freqs, i), "lower": lower}, answer)
    if op == "dselect":
        return validate_interval("dselect", {"exact": o_ms_select(freqs, i), "delta": delta}, answer)
    if op != "select":
        raise ParameterError(f"不支持的校验类型: {op}")
    verdict = validate_interval("select", {"exact": o_ms_select(freqs, i),
                                           "lower": o_ms_select(freqs, i - delta)}, answer)
    if verdict.ok or answer < 1 or answer > len(freqs):
        return verdict
    first = o_ms_rank(freqs, answer - 1) + 1
    last = o_ms_rank(freqs, answer)
    if first <= last and first <= i and last > i - delta:
        return Verdict(True, verdict.low, verdict.high, "")
    return verdict


def sequence_verdict(op: str, symbols: Sequence[int], j: int, i: int, delta: int, answer: int) -> Verdict:
    """序列近似查询的校验（op 为 drank / select）"""
    if op == "drank":
        return validate_interval("drank", {"exact": o_seq_rank(symbols, j, i), "delta": delta}, answer)
    if op == "select":
        return validate_interval("select", {"exact": o_seq_select(symbols, j, i),
                                            "lower": o_seq_select(symbols, j, i - delta)}, answer)
    raise ParameterError(f"不支持的校验类型: {op}")


def stream_verdict(op: str, history: Sequence[int], n: int, i: int, delta: int, answer: Number,
                   ell: int = 1) -> Verdict:
    """
    流近似查询的校验

    ss：(ss(i) - δ, ss(i)]；iss：(iss(i - δ - ℓ + 1), iss(i)]，ℓ = 1 即标准 issA 区间。
    """
    if op == "ss":
        return validate_interval("ss", {"exact": o_ss(history, n, i), "delta": delta}, answer)
    if op == "iss":
        return validate_interval("iss", {"exact": o_iss(history, n, i),
                                         "lower": o_iss(history, n, i - delta - ell + 1)}, answer)
    raise ParameterError(f"不支持的校验类型: {op}")
