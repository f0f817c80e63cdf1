# -*- coding: utf-8 -*-
"""
可搜索部分和
静态 α 位非负整数数组，支持前缀和 sum(i) 与 search(x) = min{ i : sum(i) > x }
"""
from typing import Any, Dict, Sequence, Union

import numpy as np

from config.config import PSUM_BLOCK, PSUM_SUPERBLOCK
from ..errors import RangeError, NotFoundError, ParameterError
from ..utils import bits_needed
from .base_structure import BaseStructure, SCALAR_BITS, array_bits
from .packed import PackedIntArray

BLOCKS_PER_SUPER = PSUM_SUPERBLOCK // PSUM_BLOCK


class PartialSums(BaseStructure):
    """
    可搜索部分和

    值以 α 位打包；每 1024 个元素一个超级块存放绝对前缀和（uint64），
    每 64 个元素一个块存放相对于所在超级块起点的前缀和（打包存储）。
    """

    kind = "psum"

    def __init__(self, values: PackedIntArray, super_sums: np.ndarray, block_sums: PackedIntArray):
        self.values = values
        self.n = values.size
        self.alpha = values.width
        self.super_sums = super_sums
        self.block_sums = block_sums
        self.total = int(super_sums[-1])

    @classmethod
    def build(cls, values: Union[Sequence[int], np.ndarray], alpha: int) -> "PartialSums":
        """
        构建部分和结构

        Args:
            values: 非负整数序列
            alpha: 每个值的位宽

        Returns:
            PartialSums

        Raises:
            ParameterError: α < 1
            ValidationError: 值 ≥ 2^α
        """
        if alpha < 1 or alpha > 64:
            raise ParameterError(f"位宽必须在 1..64 之间: {alpha}")
        packed = PackedIntArray.build(values, alpha)
        vals = packed.to_numpy()
        n = int(vals.size)
        nblocks = (n + PSUM_BLOCK - 1) // PSUM_BLOCK
        nsuper = (n + PSUM_SUPERBLOCK - 1) // PSUM_SUPERBLOCK
        cum = np.zeros(n + 1, dtype=np.int64)
        if n:
            cum[1:] = np.cumsum(vals)
        super_idx = np.minimum(np.arange(nsuper + 1, dtype=np.int64) * PSUM_SUPERBLOCK, n)
        super_sums = cum[super_idx].astype(np.uint64)
        block_idx = np.arange(nblocks + 1, dtype=np.int64)
        block_start = np.minimum(block_idx * PSUM_BLOCK, n)
        owner = np.minimum(block_idx // BLOCKS_PER_SUPER, nsuper)
        rel = cum[block_start] - cum[super_idx[owner]]
        width = bits_needed(PSUM_SUPERBLOCK * ((1 << alpha) - 1))
        block_sums = PackedIntArray.build(rel, width)
        return cls(packed, super_sums, block_sums)

    def __len__(self) -> int:
        return self.n

    def value(self, i: int) -> int:
        """A[i]，i 从 1 开始"""
        if i < 1 or i > self.n:
            raise RangeError(f"下标越界: {i}（长度 {self.n}）")
        return self.values.get(i - 1)

    def sum(self, i: int) -> int:
        """
        前缀和 A[1] + … + A[i]

        Raises:
            RangeError: i 不在 0..n
        """
        if i < 0 or i > self.n:
            raise RangeError(f"下标越界: {i}（长度 {self.n}）")
        k = i // PSUM_BLOCK
        s = k // BLOCKS_PER_SUPER
        base = int(self.super_sums[s]) + self.block_sums.get(k) if k < self.block_sums.size else self.total
        start = k * PSUM_BLOCK
        if i > start:
            base += self.values.range_sum(start, i)
        return base

    def search(self, x: int) -> int:
        """
        最小的 i 使 sum(i) > x

        Raises:
            NotFoundError: x ≥ sum(n) 或 x < 0
        """
        if x < 0 or x >= self.total:
            raise NotFoundError(f"不存在前缀和大于 {x} 的位置（总和 {self.total}）")
        s = int(np.searchsorted(self.super_sums, np.uint64(x), side="right")) - 1
        base = int(self.super_sums[s])
        first = s * BLOCKS_PER_SUPER
        last = min(first + BLOCKS_PER_SUPER, self.block_sums.size - 1)
        k = first
        for kk in range(first + 1, last):
            if base + self.block_sums.get(kk) <= x:
                k = kk
            else:
                break
        acc = base + self.block_sums.get(k)
        start = k * PSUM_BLOCK
        chunk = self.values.gather(start, min(start + PSUM_BLOCK, self.n))
        offset = int(np.searchsorted(np.cumsum(chunk), x - acc, side="right"))
        return start + offset + 1

    def to_list(self):
        return [int(v) for v in self.values.to_numpy()]

    def space_bits(self) -> int:
        return (self.values.space_bits() + array_bits(self.super_sums)
                + self.block_sums.space_bits() + SCALAR_BITS)

    def to_state(self) -> Dict[str, Any]:
        return {"values": self.values, "super_sums": self.super_sums, "block_sums": self.block_sums}

    @classmethod
    def from_state(cls, state: Dict[str, Any]) -> "PartialSums":
        return cls(state["values"], state["super_sums"], state["block_sums"])
