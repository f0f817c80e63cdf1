# -*- coding: utf-8 -*-
"""
位串上的 δ 近似 rank/select

DRankSelectA 支持 drankA / selectA，只保存长度 ⌈n/δ⌉ 的标记位串 Bp：
Bp[k] = 1 当且仅当块 k 含有某个第 jδ 个 1。
RankDSelectA 支持 rankA / dselectA，保存每块 1 的个数的部分和，
以及每块第一个 1 的块内偏移。
"""
from typing import Any, Dict, List, Optional

import numpy as np

from config.config import SPARSE_DENSITY_RATIO
from ..errors import RangeError, NotFoundError, ParameterError
from ..utils import BitsLike, as_bit_array, bits_needed
from .base_structure import BaseStructure, SCALAR_BITS
from .bitvec import PlainBitVector, SparseBitVector
from .packed import PackedIntArray
from .psum import PartialSums


def check_delta(delta: int, n: int) -> None:
    """δ 必须满足 1 ≤ δ ≤ n"""
    if n < 1:
        raise ParameterError("位串长度必须至少为 1")
    if delta < 1 or delta > n:
        raise ParameterError(f"δ 必须在 1..{n} 之间: {delta}")


class DRankSelectA(BaseStructure):
    """
    drankA / selectA 结构
    """

    kind = "drank-select"

    def __init__(self, n: int, delta: int, m: int, bp: BaseStructure):
        self.n = int(n)
        self.delta = int(delta)
        self.m = int(m)
        self.bp = bp

    @classmethod
    def build(cls, bits: BitsLike, delta: int, sparse: Optional[bool] = None) -> "DRankSelectA":
        """
        构建 Bp

        Args:
            bits: 源位串 B
            delta: 加性误差 δ
            sparse: 是否用稀疏位向量存放 Bp；None 时按 m/δ ≤ (n/δ)/8 判定

        Raises:
            ParameterError: δ 不在 1..n
        """
        arr = as_bit_array(bits)
        n = int(arr.size)
        check_delta(delta, n)
        ones = np.flatnonzero(arr) + 1
        m = int(ones.size)
        nblocks = (n + delta - 1) // delta
        marked = ones[delta - 1::delta]
        blocks = (marked + delta - 1) // delta
        if sparse is None:
            sparse = SPARSE_DENSITY_RATIO * m <= n
        if sparse:
            bp = SparseBitVector.build(nblocks, blocks)
        else:
            bp_bits = np.zeros(nblocks, dtype=np.uint8)
            bp_bits[blocks - 1] = 1
            bp = PlainBitVector.build(bp_bits)
        return cls(n, delta, m, bp)

    def drank_a(self, i: int) -> int:
        """
        drankA1(i)：返回 r，满足 rank1(i) - δ < r ≤ rank1(i)

        Raises:
            RangeError: i 不在 1..n
        """
        if i < 1 or i > self.n:
            raise RangeError(f"位置越界: {i}（长度 {self.n}）")
        q, rem = divmod(i, self.delta)
        r = self.delta * self.bp.rank(1, q)
        if rem:
            r += rem * self.bp.access(q + 1)
        return r

    def select_a(self, i: int) -> int:
        """
        selectA1(i)：返回 p，满足 select1(i-δ) < p ≤ select1(i)

        Raises:
            NotFoundError: i 不在 1..m
        """
        if i < 1 or i > self.m:
            raise NotFoundError(f"不存在第 {i} 个 1（共 {self.m} 个）")
        j = i // self.delta
        if j == 0:
            return i
        return self.delta * (self.bp.select(1, j) - 1) + (i % self.delta) + 1

    def bp_bits(self) -> List[int]:
        """Bp 的 0/1 列表"""
        return [self.bp.access(k) for k in range(1, self.bp.n + 1)]

    @property
    def sparse(self) -> bool:
        return isinstance(self.bp, SparseBitVector)

    def space_bits(self) -> int:
        return self.bp.space_bits() + 3 * SCALAR_BITS

    def to_state(self) -> Dict[str, Any]:
        return {"n": self.n, "delta": self.delta, "m": self.m, "bp": self.bp}

    @classmethod
    def from_state(cls, state: Dict[str, Any]) -> "DRankSelectA":
        return cls(state["n"], state["delta"], state["m"], state["bp"])


class RankDSelectA(BaseStructure):
    """
    rankA / dselectA 结构
    """

    kind = "rank-dselect"

    def __init__(self, n: int, delta: int, counts: PartialSums, first: PackedIntArray):
        self.n = int(n)
        self.delta = int(delta)
        self.counts = counts
        self.first = first
        self.nblocks = counts.n
        self.m = counts.total

    @classmethod
    def build(cls, bits: BitsLike, delta: int) -> "RankDSelectA":
        """
        构建块计数 C（α = ⌈lg(δ+1)⌉）与块内首个 1 的偏移表 F

        Raises:
            ParameterError: δ 不在 1..n
        """
        arr = as_bit_array(bits)
        n = int(arr.size)
        check_delta(delta, n)
        nblocks = (n + delta - 1) // delta
        starts = np.arange(nblocks, dtype=np.int64) * delta
        counts = np.add.reduceat(arr.astype(np.int64), starts) if n else np.zeros(0, dtype=np.int64)
        alpha = bits_needed(delta)
        ones = np.flatnonzero(arr)
        first = np.zeros(nblocks, dtype=np.int64)
        if ones.size:
            block_of = ones // delta
            uniq, idx = np.unique(block_of, return_index=True)
            first[uniq] = ones[idx] - uniq * delta + 1
        return cls(n, delta, PartialSums.build(counts, alpha), PackedIntArray.build(first, bits_needed(delta)))

    def block_count(self, k: int) -> int:
        """第 k 块（从 1 开始）中 1 的个数"""
        return self.counts.value(k)

    def first_offset(self, k: int) -> int:
        """第 k 块（从 1 开始）首个 1 的块内偏移 1..δ，无 1 时为 0"""
        if k < 1 or k > self.nblocks:
            raise RangeError(f"块下标越界: {k}（共 {self.nblocks} 块）")
        return self.first.get(k - 1)

    def rank_a(self, i: int) -> int:
        """
        rankA1(i)：返回 r，满足 rank1(i-δ) < r ≤ rank1(i)；
        rank1(i-δ) = rank1(i) 时 r = rank1(i)

        Raises:
            RangeError: i 不在 1..n
        """
        if i < 1 or i > self.n:
            raise RangeError(f"位置越界: {i}（长度 {self.n}）")
        j = i // self.delta
        r = self.counts.sum(j)
        if j < self.nblocks:
            f = self.first.get(j)
            if 1 <= f <= i - j * self.delta:
                r += 1
        return r

    def dselect_a(self, i: int) -> int:
        """
        dselectA1(i)：返回第 i 个 1 所在块的起始位置，满足 select1(i) - δ < p ≤ select1(i)

        Raises:
            NotFoundError: i 不在 1..m
        """
        if i < 1 or i > self.m:
            raise NotFoundError(f"不存在第 {i} 个 1（共 {self.m} 个）")
        k = self.counts.search(i - 1)
        return (k - 1) * self.delta + 1

    def space_bits(self) -> int:
        return self.counts.space_bits() + self.first.space_bits() + 2 * SCALAR_BITS

    def to_state(self) -> Dict[str, Any]:
        return {"n": self.n, "delta": self.delta, "counts": self.counts, "first": self.first}

    @classmethod
    def from_state(cls, state: Dict[str, Any]) -> "RankDSelectA":
        return cls(state["n"], state["delta"], state["counts"], state["first"])
