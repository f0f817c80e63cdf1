# -*- coding: utf-8 -*-
"""
定宽整数打包数组
每个值占 width 位，连续存放在 uint64 字中，字段可以跨越字边界
"""
from typing import Any, Dict, Sequence, Union

import numpy as np

from ..errors import RangeError, ValidationError, ParameterError
from ..utils import ALL_ONES, WORD_MASK, popcount, low_mask
from .base_structure import BaseStructure, SCALAR_BITS, array_bits


class PackedIntArray(BaseStructure):
    """
    width 位定宽整数数组（0 ≤ width ≤ 64，width 为 0 时所有值都是 0）
    下标从 0 开始；末尾保留一个填充字，读取跨字字段时无需判断边界
    """

    kind = "packed"

    def __init__(self, words: np.ndarray, size: int, width: int):
        self.words = words
        self.size = int(size)
        self.width = int(width)
        self._mask = low_mask(self.width)

    @classmethod
    def zeros(cls, size: int, width: int) -> "PackedIntArray":
        """创建全 0 数组"""
        if width < 0 or width > 64:
            raise ParameterError(f"不支持的位宽: {width}")
        nwords = (int(size) * int(width) + 63) // 64 + 1
        return cls(np.zeros(nwords, dtype=np.uint64), size, width)

    @classmethod
    def build(cls, values: Union[Sequence[int], np.ndarray], width: int) -> "PackedIntArray":
        """
        由整数序列构建打包数组

        Args:
            values: 非负整数序列
            width: 每个值的位宽

        Returns:
            PackedIntArray

        Raises:
            ValidationError: 值为负或超出位宽
        """
        vals = np.asarray(values, dtype=np.int64).ravel() if len(values) else np.zeros(0, dtype=np.int64)
        arr = cls.zeros(vals.size, width)
        if vals.size == 0 or width == 0:
            if vals.size and vals.max() != 0:
                raise ValidationError("位宽为 0 时所有值必须为 0")
            return arr
        if vals.min() < 0:
            raise ValidationError("打包数组只接受非负整数")
        if width < 64 and int(vals.max()) >> width:
            raise ValidationError(f"值 {int(vals.max())} 超出 {width} 位")
        uvals = vals.astype(np.uint64)
        pos = np.arange(vals.size, dtype=np.uint64) * np.uint64(width)
        widx = (pos >> np.uint64(6)).astype(np.int64)
        off = pos & np.uint64(63)
        np.bitwise_or.at(arr.words, widx, uvals << off)
        cross = (off.astype(np.int64) + width) > 64
        if cross.any():
            shift = np.uint64(64) - off[cross]
            np.bitwise_or.at(arr.words, widx[cross] + 1, uvals[cross] >> shift)
        return arr

    def __len__(self) -> int:
        return self.size

    def get(self, i: int) -> int:
        """
        读取第 i 个值

        Raises:
            RangeError: 下标越界
        """
        if i < 0 or i >= self.size:
            raise RangeError(f"下标越界: {i}（长度 {self.size}）")
        if self.width == 0:
            return 0
        bit = i * self.width
        w = bit >> 6
        off = bit & 63
        val = int(self.words[w]) >> off
        if off + self.width > 64:
            val |= int(self.words[w + 1]) << (64 - off)
        return val & self._mask

    def __getitem__(self, i: int) -> int:
        return self.get(i)

    def set(self, i: int, value: int) -> None:
        """
        写入第 i 个值

        Raises:
            RangeError: 下标越界
            ValidationError: 值超出位宽
        """
        if i < 0 or i >= self.size:
            raise RangeError(f"下标越界: {i}（长度 {self.size}）")
        if value < 0 or value > self._mask:
            raise ValidationError(f"值 {value} 超出 {self.width} 位")
        if self.width == 0:
            return
        bit = i * self.width
        w = bit >> 6
        off = bit & 63
        lo = int(self.words[w])
        lo = (lo & ~(self._mask << off) | (value << off)) & WORD_MASK
        self.words[w] = lo
        if off + self.width > 64:
            spill = off + self.width - 64
            hi = int(self.words[w + 1])
            hi = (hi & ~low_mask(spill)) | (value >> (64 - off))
            self.words[w + 1] = hi

    def gather(self, start: int, stop: int) -> np.ndarray:
        """
        向量化读取 [start, stop) 区间的值

        Returns:
            int64 数组
        """
        if start < 0 or stop > self.size or start > stop:
            raise RangeError(f"区间越界: [{start}, {stop})（长度 {self.size}）")
        count = stop - start
        if count == 0 or self.width == 0:
            return np.zeros(count, dtype=np.int64)
        pos = np.arange(start, stop, dtype=np.uint64) * np.uint64(self.width)
        widx = (pos >> np.uint64(6)).astype(np.int64)
        off = pos & np.uint64(63)
        lo = self.words[widx] >> off
        cross = (off.astype(np.int64) + self.width) > 64
        shift = np.where(cross, np.uint64(64) - off, np.uint64(0))
        hi = np.where(cross, self.words[widx + 1] << shift, np.uint64(0))
        mask = ALL_ONES if self.width == 64 else np.uint64(self._mask)
        return ((lo | hi) & mask).astype(np.int64)

    def to_numpy(self) -> np.ndarray:
        """全部值"""
        return self.gather(0, self.size)

    def range_sum(self, start: int, stop: int) -> int:
        """
        [start, stop) 区间值之和；1 位宽时按字 popcount
        """
        if start >= stop:
            return 0
        if self.width == 1:
            total = 0
            pos = start
            while pos < stop:
                w = pos >> 6
                off = pos & 63
                take = min(64 - off, stop - pos)
                total += popcount((int(self.words[w]) >> off) & low_mask(take))
                pos += take
            return total
        if stop - start <= 8:
            return sum(self.get(j) for j in range(start, stop))
        return int(self.gather(start, stop).sum())

    def space_bits(self) -> int:
        return array_bits(self.words) + 2 * SCALAR_BITS

    def to_state(self) -> Dict[str, Any]:
        return {"size": self.size, "width": self.width, "words": self.words}

    @classmethod
    def from_state(cls, state: Dict[str, Any]) -> "PackedIntArray":
        return cls(np.asarray(state["words"], dtype=np.uint64), int(state["size"]), int(state["width"]))
