# -*- coding: utf-8 -*-
"""
一般字母表序列上的精确 rank/select（小波矩阵）

符号取值 0..σ，共 ⌈lg(σ+1)⌉ 层普通位向量；每层按当前位稳定划分，0 在前 1 在后，
Z[l] 记录第 l 层 0 的个数。rank / select / access 各需 O(lg σ) 次位向量操作。
"""
from typing import Any, Dict, List, Sequence, Union

import numpy as np

from ..errors import RangeError, NotFoundError, ValidationError
from ..utils import bits_needed
from .base_structure import BaseStructure, SCALAR_BITS, array_bits
from .bitvec import PlainBitVector


class SeqRankSelect(BaseStructure):
    """
    小波矩阵
    """

    kind = "wavelet"

    def __init__(self, n: int, sigma: int, levels: List[PlainBitVector], zeros: np.ndarray):
        self.n = int(n)
        self.sigma = int(sigma)
        self.levels = levels
        self.zeros = zeros
        self.height = len(levels)

    @classmethod
    def build(cls, symbols: Union[Sequence[int], np.ndarray], sigma: int) -> "SeqRankSelect":
        """
        构建小波矩阵

        Args:
            symbols: 取值 0..σ 的符号序列
            sigma: 最大符号

        Raises:
            ValidationError: 符号越界
        """
        seq = np.asarray(symbols, dtype=np.int64).ravel() if len(symbols) else np.zeros(0, dtype=np.int64)
        if seq.size and (seq.min() < 0 or seq.max() > sigma):
            raise ValidationError(f"符号必须位于 0..{sigma}")
        height = bits_needed(sigma)
        levels = []
        zeros = np.zeros(height, dtype=np.int64)
        for level in range(height):
            shift = height - 1 - level
            bits = ((seq >> shift) & 1).astype(np.uint8)
            levels.append(PlainBitVector.build(bits))
            zeros[level] = int(seq.size - bits.sum())
            seq = np.concatenate((seq[bits == 0], seq[bits == 1]))
        return cls(int(len(symbols)), sigma, levels, zeros)

    def __len__(self) -> int:
        return self.n

    def _bit(self, c: int, level: int) -> int:
        return (c >> (self.height - 1 - level)) & 1

    def _bounds(self, c: int, i: int):
        """返回符号 c 在最底层的起点与 A[1..i] 中 c 的映射终点（均为 0 起始的半开区间）"""
        s, e = 0, i
        for level, bv in enumerate(self.levels):
            if self._bit(c, level):
                z = int(self.zeros[level])
                s = z + bv.rank1(s)
                e = z + bv.rank1(e)
            else:
                s = bv.rank0(s)
                e = bv.rank0(e)
        return s, e

    def rank(self, c: int, i: int) -> int:
        """
        rank_c(i)：A[1..i] 中符号 c 的个数

        Raises:
            RangeError: i 不在 0..n
        """
        if i < 0 or i > self.n:
            raise RangeError(f"位置越界: {i}（长度 {self.n}）")
        if c < 0 or c > self.sigma:
            return 0
        s, e = self._bounds(c, i)
        return e - s

    def count(self, c: int) -> int:
        """符号 c 的出现总数"""
        return self.rank(c, self.n)

    def select(self, c: int, k: int) -> int:
        """
        select_c(k)：第 k 个符号 c 的位置

        Raises:
            NotFoundError: k 超出 c 的出现次数
        """
        if c < 0 or c > self.sigma:
            raise NotFoundError(f"符号 {c} 不在字母表中")
        s, e = self._bounds(c, self.n)
        if k < 1 or k > e - s:
            raise NotFoundError(f"不存在第 {k} 个符号 {c}（共 {e - s} 个）")
        pos = s + k
        for level in range(self.height - 1, -1, -1):
            bv = self.levels[level]
            if self._bit(c, level):
                pos = bv.select1(pos - int(self.zeros[level]))
            else:
                pos = bv.select0(pos)
        return pos

    def access(self, i: int) -> int:
        """A[i]，i 从 1 开始"""
        if i < 1 or i > self.n:
            raise RangeError(f"位置越界: {i}（长度 {self.n}）")
        p = i - 1
        c = 0
        for level, bv in enumerate(self.levels):
            b = bv.access(p + 1)
            c = (c << 1) | b
            p = int(self.zeros[level]) + bv.rank1(p) if b else bv.rank0(p)
        return c

    def to_list(self) -> List[int]:
        return [self.access(i) for i in range(1, self.n + 1)]

    def space_bits(self) -> int:
        return sum(bv.space_bits() for bv in self.levels) + array_bits(self.zeros) + 2 * SCALAR_BITS

    def to_state(self) -> Dict[str, Any]:
        state = {"n": self.n, "sigma": self.sigma, "zeros": self.zeros}
        for level, bv in enumerate(self.levels):
            state[f"level{level}"] = bv
        return state

    @classmethod
    def from_state(cls, state: Dict[str, Any]) -> "SeqRankSelect":
        zeros = np.asarray(state["zeros"], dtype=np.int64)
        levels = [state[f"level{level}"] for level in range(int(zeros.size))]
        return cls(state["n"], state["sigma"], levels, zeros)
