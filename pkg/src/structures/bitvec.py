# -*- coding: utf-8 -*-
"""
精确 rank/select 位向量
包含带两级计数目录的普通位向量和高低位拆分编码的稀疏位向量，位置全部从 1 开始
"""
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from config.config import SUPERBLOCK_WORDS, SUPERBLOCK_BITS, REL_FIELD_BITS, SELECT_SAMPLE_RATE
from ..errors import RangeError, NotFoundError, ValidationError
from ..utils import (BitsLike, as_bit_array, pack_bits, unpack_bits, popcount64, popcount,
                     select_in_word, low_mask, floor_log2)
from .base_structure import BaseStructure, SCALAR_BITS, array_bits
from .packed import PackedIntArray

REL_MASK = low_mask(REL_FIELD_BITS)


class PlainBitVector(BaseStructure):
    """
    普通位向量

    目录：每 512 位一个超级块存放绝对计数；超级块内 7 个 64 位块的相对计数
    以 9 位字段打包在一个 uint64 中；select 每 8192 个 1（0）采样一次所在超级块。
    """

    kind = "plain"

    def __init__(self, n: int, words: np.ndarray, super_counts: np.ndarray, rel_counts: np.ndarray,
                 ones_samples: np.ndarray, zeros_samples: np.ndarray):
        self.n = int(n)
        self.words = words
        self.super_counts = super_counts
        self.rel_counts = rel_counts
        self.ones_samples = ones_samples
        self.zeros_samples = zeros_samples
        self.ones = int(super_counts[-1]) if super_counts.size else 0
        self.zeros = self.n - self.ones
        self.nsuper = int(rel_counts.size)

    @classmethod
    def build(cls, bits: BitsLike) -> "PlainBitVector":
        """
        由位串构建位向量

        Args:
            bits: "0101" 字符串、0/1 序列或 numpy 数组

        Returns:
            PlainBitVector
        """
        arr = as_bit_array(bits)
        n = int(arr.size)
        words = pack_bits(arr)
        nwords = int(words.size)
        nsuper = (nwords + SUPERBLOCK_WORDS - 1) // SUPERBLOCK_WORDS
        cum = np.zeros(nsuper * SUPERBLOCK_WORDS + 1, dtype=np.int64)
        if nwords:
            cum[1:nwords + 1] = np.cumsum(popcount64(words).astype(np.int64))
            cum[nwords + 1:] = cum[nwords]
        total = int(cum[-1])
        super_dtype = np.uint32 if n < (1 << 32) else np.uint64
        super_counts = cum[::SUPERBLOCK_WORDS].astype(super_dtype)

        rel_counts = np.zeros(nsuper, dtype=np.uint64)
        if nsuper:
            grid = cum[:-1].reshape(nsuper, SUPERBLOCK_WORDS)
            rel = grid - grid[:, :1]
            for k in range(1, SUPERBLOCK_WORDS):
                rel_counts |= rel[:, k].astype(np.uint64) << np.uint64(REL_FIELD_BITS * (k - 1))

        ones_samples = cls._sample(super_counts.astype(np.int64), total)
        zero_super = np.minimum(np.arange(nsuper + 1, dtype=np.int64) * SUPERBLOCK_BITS, n) \
            - super_counts.astype(np.int64)
        zeros_samples = cls._sample(zero_super, n - total)
        return cls(n, words, super_counts, rel_counts, ones_samples, zeros_samples)

    @staticmethod
    def _sample(counts: np.ndarray, total: int) -> np.ndarray:
        """每 SELECT_SAMPLE_RATE 个目标记录其所在超级块"""
        targets = np.arange(1, total + 1, SELECT_SAMPLE_RATE, dtype=np.int64)
        blocks = np.searchsorted(counts, targets, side="left") - 1
        return blocks.astype(np.uint32)

    def __len__(self) -> int:
        return self.n

    def _rel(self, s: int, k: int) -> int:
        if k == 0:
            return 0
        return (int(self.rel_counts[s]) >> (REL_FIELD_BITS * (k - 1))) & REL_MASK

    def rank1(self, i: int) -> int:
        """前 i 位中 1 的个数"""
        if i < 0 or i > self.n:
            raise RangeError(f"位置越界: {i}（长度 {self.n}）")
        w = i >> 6
        s = w >> 3
        r = int(self.super_counts[s]) + self._rel(s, w & 7) if s < self.nsuper else self.ones
        off = i & 63
        if off:
            r += popcount(int(self.words[w]) & low_mask(off))
        return r

    def rank0(self, i: int) -> int:
        """前 i 位中 0 的个数"""
        return i - self.rank1(i)

    def rank(self, b: int, i: int) -> int:
        """
        rank_b(i)：B[1..i] 中 b 的个数

        Args:
            b: 0 或 1
            i: 0..n

        Raises:
            RangeError: i 越界
        """
        return self.rank1(i) if b else self.rank0(i)

    def access(self, i: int) -> int:
        """B[i]，i 从 1 开始"""
        if i < 1 or i > self.n:
            raise RangeError(f"位置越界: {i}（长度 {self.n}）")
        p = i - 1
        return (int(self.words[p >> 6]) >> (p & 63)) & 1

    def _super_zeros(self, s: int) -> int:
        return min(s * SUPERBLOCK_BITS, self.n) - int(self.super_counts[s])

    def select1(self, k: int) -> int:
        """第 k 个 1 的位置"""
        if k < 1 or k > self.ones:
            raise NotFoundError(f"不存在第 {k} 个 1（共 {self.ones} 个）")
        j = (k - 1) // SELECT_SAMPLE_RATE
        lo = int(self.ones_samples[j])
        hi = int(self.ones_samples[j + 1]) + 1 if j + 1 < self.ones_samples.size else self.nsuper
        s = lo + int(np.searchsorted(self.super_counts[lo:hi + 1], k, side="left")) - 1
        remaining = k - int(self.super_counts[s])
        sub = 0
        for kk in range(1, SUPERBLOCK_WORDS):
            if self._rel(s, kk) < remaining and s * SUPERBLOCK_WORDS + kk < self.words.size:
                sub = kk
            else:
                break
        w = s * SUPERBLOCK_WORDS + sub
        return 64 * w + select_in_word(int(self.words[w]), remaining - self._rel(s, sub)) + 1

    def select0(self, k: int) -> int:
        """第 k 个 0 的位置"""
        if k < 1 or k > self.zeros:
            raise NotFoundError(f"不存在第 {k} 个 0（共 {self.zeros} 个）")
        j = (k - 1) // SELECT_SAMPLE_RATE
        lo = int(self.zeros_samples[j])
        hi = int(self.zeros_samples[j + 1]) + 1 if j + 1 < self.zeros_samples.size else self.nsuper
        # 最大的 s 使超级块 s 之前的 0 少于 k
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self._super_zeros(mid) < k:
                lo = mid
            else:
                hi = mid - 1
        s = lo
        remaining = k - self._super_zeros(s)
        sub = 0
        for kk in range(1, SUPERBLOCK_WORDS):
            if 64 * kk - self._rel(s, kk) < remaining and s * SUPERBLOCK_WORDS + kk < self.words.size:
                sub = kk
            else:
                break
        w = s * SUPERBLOCK_WORDS + sub
        inverted = ~int(self.words[w]) & low_mask(64)
        return 64 * w + select_in_word(inverted, remaining - (64 * sub - self._rel(s, sub))) + 1

    def select(self, b: int, k: int) -> int:
        """
        select_b(k)：第 k 个 b 的位置

        Raises:
            NotFoundError: k 超出 b 的个数
        """
        return self.select1(k) if b else self.select0(k)

    def to_list(self) -> List[int]:
        """还原为 0/1 列表"""
        return [int(x) for x in unpack_bits(self.words, self.n)]

    def space_bits(self) -> int:
        return (array_bits(self.words) + array_bits(self.super_counts) + array_bits(self.rel_counts)
                + array_bits(self.ones_samples) + array_bits(self.zeros_samples) + 2 * SCALAR_BITS)

    def to_state(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "words": self.words,
            "super_counts": self.super_counts,
            "rel_counts": self.rel_counts,
            "ones_samples": self.ones_samples,
            "zeros_samples": self.zeros_samples,
        }

    @classmethod
    def from_state(cls, state: Dict[str, Any]) -> "PlainBitVector":
        return cls(state["n"], state["words"], state["super_counts"], state["rel_counts"],
                   state["ones_samples"], state["zeros_samples"])


class SparseBitVector(BaseStructure):
    """
    稀疏位向量（高低位拆分的单调序列编码）

    每个 1 的位置 p 拆成低 L 位与高位 h；低位存入 L 位打包数组，
    高位以一元码写入长度 m + ((n-1) >> L) + 1 的普通位向量。
    """

    kind = "sparse"

    def __init__(self, n: int, m: int, low_bits: int, lower: PackedIntArray, upper: PlainBitVector):
        self.n = int(n)
        self.m = int(m)
        self.ones = self.m
        self.zeros = self.n - self.m
        self.low_bits = int(low_bits)
        self.lower = lower
        self.upper = upper

    @classmethod
    def build(cls, n: int, ones: Sequence[int]) -> "SparseBitVector":
        """
        由长度和 1 的位置构建

        Args:
            n: 位长
            ones: 严格递增的位置，取值 1..n

        Raises:
            ValidationError: 位置未排序或越界
        """
        n = int(n)
        pos = np.asarray(ones, dtype=np.int64).ravel() if len(ones) else np.zeros(0, dtype=np.int64)
        m = int(pos.size)
        if m:
            if pos[0] < 1 or pos[-1] > n:
                raise ValidationError(f"位置必须位于 [1, {n}] 内")
            if m > 1 and np.any(np.diff(pos) <= 0):
                raise ValidationError("位置必须严格递增")
        low_bits = floor_log2(n // m) if m else max(0, n.bit_length())
        zero_based = pos - 1
        lower = PackedIntArray.build(zero_based & low_mask(low_bits), low_bits)
        highs = zero_based >> low_bits
        upper_len = m + ((max(n, 1) - 1) >> low_bits) + 1
        upper_bits = np.zeros(upper_len, dtype=np.uint8)
        upper_bits[highs + np.arange(m, dtype=np.int64)] = 1
        upper = PlainBitVector.build(upper_bits)
        return cls(n, m, low_bits, lower, upper)

    @classmethod
    def from_bits(cls, bits: BitsLike) -> "SparseBitVector":
        """由位串构建"""
        arr = as_bit_array(bits)
        return cls.build(arr.size, np.flatnonzero(arr) + 1)

    def __len__(self) -> int:
        return self.n

    def select1(self, k: int) -> int:
        """第 k 个 1 的位置"""
        if k < 1 or k > self.m:
            raise NotFoundError(f"不存在第 {k} 个 1（共 {self.m} 个）")
        high = self.upper.select1(k) - k
        return ((high << self.low_bits) | self.lower.get(k - 1)) + 1

    def rank1(self, i: int) -> int:
        """前 i 位中 1 的个数"""
        if i < 0 or i > self.n:
            raise RangeError(f"位置越界: {i}（长度 {self.n}）")
        if i == 0 or self.m == 0:
            return 0
        x = i - 1
        h = x >> self.low_bits
        low = x & low_mask(self.low_bits)
        if h == 0:
            count = 0
            upos = 0
        else:
            upos = self.upper.select0(h)
            count = upos - h
        # 高位等于 h 的元素紧随第 h 个 0 之后，低位升序
        while count < self.m and self.upper.access(upos + 1) == 1:
            if self.lower.get(count) > low:
                break
            count += 1
            upos += 1
        return count

    def rank0(self, i: int) -> int:
        return i - self.rank1(i)

    def rank(self, b: int, i: int) -> int:
        return self.rank1(i) if b else self.rank0(i)

    def select0(self, j: int) -> int:
        """第 j 个 0 的位置"""
        if j < 1 or j > self.zeros:
            raise NotFoundError(f"不存在第 {j} 个 0（共 {self.zeros} 个）")
        # 最大的 k 使 select1(k) - k < j，select1(0) 视为 0
        lo, hi = 0, self.m
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.select1(mid) - mid < j:
                lo = mid
            else:
                hi = mid - 1
        return j + lo

    def select(self, b: int, k: int) -> int:
        return self.select1(k) if b else self.select0(k)

    def access(self, i: int) -> int:
        if i < 1 or i > self.n:
            raise RangeError(f"位置越界: {i}（长度 {self.n}）")
        return self.rank1(i) - self.rank1(i - 1)

    def positions(self) -> List[int]:
        """全部 1 的位置"""
        return [self.select1(k) for k in range(1, self.m + 1)]

    def space_bits(self) -> int:
        return self.lower.space_bits() + self.upper.space_bits() + 3 * SCALAR_BITS

    def to_state(self) -> Dict[str, Any]:
        return {"n": self.n, "m": self.m, "low_bits": self.low_bits, "lower": self.lower, "upper": self.upper}

    @classmethod
    def from_state(cls, state: Dict[str, Any]) -> "SparseBitVector":
        return cls(state["n"], state["m"], state["low_bits"], state["lower"], state["upper"])


def build_bitvector(bits: BitsLike, sparse: Optional[bool] = None) -> BaseStructure:
    """
    按密度选择普通或稀疏位向量

    Args:
        bits: 位串
        sparse: None 时按 1 的比例自动选择（1 的个数不超过 n/8 时用稀疏）
    """
    arr = as_bit_array(bits)
    if sparse is None:
        sparse = arr.size > 0 and 8 * int(arr.sum()) <= arr.size
    if sparse:
        return SparseBitVector.from_bits(arr)
    return PlainBitVector.build(arr)
