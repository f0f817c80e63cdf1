# -*- coding: utf-8 -*-
"""
一般字母表序列上的 δ 近似 rank/select

A 按 δ 分块，块后插入分隔符 $（编码为 0）得到 A'；每个符号只保留第 iδ 次出现，
得到长度不超过 ⌊n/δ⌋ + ⌈n/δ⌉ 的 A''，在其上建立精确 rank/select。
"""
from typing import Any, Dict, Sequence, Union

import numpy as np

from ..errors import RangeError, NotFoundError, ParameterError, ValidationError
from ..utils import bits_needed
from .base_structure import BaseStructure, SCALAR_BITS
from .packed import PackedIntArray
from .wavelet import SeqRankSelect

SEPARATOR = 0


def reduce_sequence(symbols: np.ndarray, delta: int) -> np.ndarray:
    """
    构造 A''

    Args:
        symbols: 取值 1..σ 的 int64 数组
        delta: 分块大小 δ

    Returns:
        A'' 的 int64 数组
    """
    n = int(symbols.size)
    nblocks = (n + delta - 1) // delta
    order = np.argsort(symbols, kind="stable")
    sorted_syms = symbols[order]
    # 每个位置是其符号的第几次出现
    starts = np.concatenate(([0], np.flatnonzero(np.diff(sorted_syms)) + 1))
    run_start = np.repeat(starts, np.diff(np.concatenate((starts, [n]))))
    occurrence = np.empty(n, dtype=np.int64)
    occurrence[order] = np.arange(n, dtype=np.int64) - run_start + 1
    kept = np.flatnonzero(occurrence % delta == 0)
    # 位置 p 的键为 2p，第 b 个 $ 的键为 2·min(bδ, n) + 1
    keys = np.concatenate((2 * (kept + 1),
                           2 * np.minimum(np.arange(1, nblocks + 1, dtype=np.int64) * delta, n) + 1))
    values = np.concatenate((symbols[kept], np.full(nblocks, SEPARATOR, dtype=np.int64)))
    return values[np.argsort(keys, kind="stable")]


class SeqApprox(BaseStructure):
    """
    序列 drankA / selectA 结构
    """

    kind = "sequence"

    def __init__(self, n: int, sigma: int, delta: int, reduced: SeqRankSelect, counts: PackedIntArray):
        self.n = int(n)
        self.sigma = int(sigma)
        self.delta = int(delta)
        self.reduced = reduced
        self.counts = counts

    @classmethod
    def build(cls, symbols: Union[Sequence[int], np.ndarray], sigma: int, delta: int) -> "SeqApprox":
        """
        构建 A'' 与每个符号的出现次数

        Args:
            symbols: 取值 1..σ 的符号序列
            sigma: 字母表大小 σ
            delta: 加性误差 δ

        Raises:
            ParameterError: σ < 1 或 δ 不在 1..n
            ValidationError: 符号超出字母表
        """
        seq = np.asarray(symbols, dtype=np.int64).ravel() if len(symbols) else np.zeros(0, dtype=np.int64)
        n = int(seq.size)
        if sigma < 1:
            raise ParameterError(f"字母表大小必须至少为 1: {sigma}")
        if n < 1 or delta < 1 or delta > n:
            raise ParameterError(f"δ 必须在 1..{n} 之间: {delta}")
        if seq.min() < 1 or seq.max() > sigma:
            raise ValidationError(f"符号必须位于 1..{sigma}")
        reduced = SeqRankSelect.build(reduce_sequence(seq, delta), sigma)
        counts = PackedIntArray.build(np.bincount(seq, minlength=sigma + 1)[1:], bits_needed(n))
        return cls(n, sigma, delta, reduced, counts)

    def count(self, j: int) -> int:
        """符号 j 在 A 中的出现次数"""
        if j < 1 or j > self.sigma:
            raise ValidationError(f"符号 {j} 不在 1..{self.sigma}")
        return self.counts.get(j - 1)

    def _separator(self, q: int) -> int:
        return 0 if q == 0 else self.reduced.select(SEPARATOR, q)

    def drank_a(self, j: int, i: int) -> int:
        """
        drankA_j(i)：满足 rank_j(i) - δ < r ≤ rank_j(i)

        Raises:
            RangeError: i 不在 1..n
            ValidationError: 符号不在字母表中
        """
        if j < 1 or j > self.sigma:
            raise ValidationError(f"符号 {j} 不在 1..{self.sigma}")
        if i < 1 or i > self.n:
            raise RangeError(f"位置越界: {i}（长度 {self.n}）")
        q, rem = divmod(i, self.delta)
        b = self._separator(q)
        kept = self.reduced.rank(j, b)
        r = self.delta * kept
        if rem:
            nxt = self.reduced.select(SEPARATOR, q + 1)
            if self.reduced.rank(j, nxt) > kept:
                r += rem
        return r

    def select_a(self, j: int, i: int) -> int:
        """
        selectA_j(i)：满足 select_j(i - δ) < p ≤ select_j(i)

        Raises:
            NotFoundError: i 超出符号 j 的出现次数
            ValidationError: 符号不在字母表中
        """
        total = self.count(j)
        if i < 1 or i > total:
            raise NotFoundError(f"不存在第 {i} 个符号 {j}（共 {total} 个）")
        jj = i // self.delta
        if jj == 0:
            return i
        x = self.reduced.select(j, jj)
        k = self.reduced.rank(SEPARATOR, x) + 1
        return self.delta * (k - 1) + (i % self.delta) + 1

    def space_bits(self) -> int:
        return self.reduced.space_bits() + self.counts.space_bits() + 3 * SCALAR_BITS

    def to_state(self) -> Dict[str, Any]:
        return {"n": self.n, "sigma": self.sigma, "delta": self.delta,
                "reduced": self.reduced, "counts": self.counts}

    @classmethod
    def from_state(cls, state: Dict[str, Any]) -> "SeqApprox":
        return cls(state["n"], state["sigma"], state["delta"], state["reduced"], state["counts"])
