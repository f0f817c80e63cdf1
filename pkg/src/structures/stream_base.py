# -*- coding: utf-8 -*-
"""
滑动窗口精确后缀和的公共部分

流按长度 n 的帧组织：当前帧的第 t 个元素写入环形数组下标 t-1，覆盖上一帧同一位置的元素，
因此窗口 = 当前帧前 t 个元素 + 上一帧后 n-t 个元素。
目录分两级：子块计数 SC（从所在块起点到子块末尾，含）在子块结束时写入，
块计数 C（从帧起点到块末尾，含）在块结束时写入；帧结束时补写最后一个不完整的块与子块。
尚未被当前帧写到的目录项仍是上一帧的值，上一帧的后缀和直接由它们得到。
"""
from typing import List

from config.config import STREAM_SUB_BITS, STREAM_SUBS_PER_BLOCK
from ..errors import RangeError, ParameterError
from ..utils import bits_needed, ceil_log2
from .base_structure import SCALAR_BITS
from .packed import PackedIntArray


class FramedWindow:
    """
    帧式滑动窗口，元素为 0..ell 的整数，每个元素占 alpha 位
    """

    def __init__(self, n: int, ell: int):
        if n < 1:
            raise ParameterError(f"窗口容量必须至少为 1: {n}")
        if ell < 1:
            raise ParameterError(f"取值上界必须至少为 1: {ell}")
        self.n = int(n)
        self.ell = int(ell)
        self.alpha = bits_needed(ell)
        self.sub = max(1, STREAM_SUB_BITS // self.alpha)
        lg = max(1, ceil_log2(self.n))
        self.block = self.sub * max(STREAM_SUBS_PER_BLOCK, -(-lg * lg // (self.sub * self.alpha)))
        self.subs_per_block = self.block // self.sub
        self.nsubs = (self.n + self.sub - 1) // self.sub
        self.nblocks = (self.n + self.block - 1) // self.block
        self.ring = PackedIntArray.zeros(self.n, self.alpha)
        self.sub_counts = PackedIntArray.zeros(self.nsubs, bits_needed(self.block * self.ell))
        self.block_counts = PackedIntArray.zeros(self.nblocks, bits_needed(self.n * self.ell))
        self.t = 0
        self.c = 0
        self.sc = 0
        self.prev_total = 0
        self.seen = 0

    @property
    def window(self) -> int:
        """当前窗口长度 min(n, 已到达元素数)"""
        return min(self.n, self.seen)

    def _append(self, x: int) -> None:
        p = self.t
        self.ring.set(p, x)
        self.t += 1
        self.c += x
        self.sc += x
        if self.t % self.sub == 0 or self.t == self.n:
            self.sub_counts.set((self.t - 1) // self.sub, self.sc)
        if self.t % self.block == 0 or self.t == self.n:
            self.block_counts.set((self.t - 1) // self.block, self.c)
            self.sc = 0
        if self.t == self.n:
            self.prev_total = self.c
            self.c = 0
            self.t = 0
        self.seen += 1

    def _sum(self, start: int, stop: int) -> int:
        return self.ring.range_sum(start, stop)

    def _block_count(self, b: int) -> int:
        return 0 if b < 0 else self.block_counts.get(b)

    def rank_current(self, y: int) -> int:
        """当前帧前 y 个元素之和（0 ≤ y ≤ t）"""
        b = y // self.block
        r = self._block_count(b - 1)
        s = y // self.sub
        if s > b * self.subs_per_block:
            r += self.sub_counts.get(s - 1)
        return r + self._sum(s * self.sub, y)

    def suffix_previous(self, x: int) -> int:
        """上一帧下标 x..n-1 的元素之和（t ≤ x < n）"""
        b = x // self.block
        s = x // self.sub
        last = min((b + 1) * self.subs_per_block, self.nsubs) - 1
        r = self.prev_total - self._block_count(b)
        r += self.sub_counts.get(last) - self.sub_counts.get(s)
        return r + self._sum(x, min((s + 1) * self.sub, self.n))

    def _check_window(self, i: int) -> None:
        if i < 1 or i > self.window:
            raise RangeError(f"后缀长度越界: {i}（窗口长度 {self.window}）")

    def ss(self, i: int) -> int:
        """
        最近 i 个元素之和

        Raises:
            RangeError: i 不在 1..min(n, 已到达元素数)
        """
        self._check_window(i)
        if i <= self.t:
            return self.c - self.rank_current(self.t - i)
        return self.c + self.suffix_previous(self.n - (i - self.t))

    def window_values(self) -> List[int]:
        """窗口内元素，按到达顺序（最旧在前）"""
        older = self.window - self.t
        values = [self.ring.get(p) for p in range(self.n - older, self.n)] if older > 0 else []
        return values + [self.ring.get(p) for p in range(self.t)]

    def verify_directories(self) -> bool:
        """由环形数组重新计算当前帧已完成的目录项并比较"""
        if self._sum(0, self.t) != self.c:
            return False
        for b in range(self.t // self.block):
            if self._block_count(b) != self._sum(0, (b + 1) * self.block):
                return False
        for s in range(self.t // self.sub):
            start = (s // self.subs_per_block) * self.block
            if self.sub_counts.get(s) != self._sum(start, (s + 1) * self.sub):
                return False
        return True

    def space_bits(self) -> int:
        return (self.ring.space_bits() + self.sub_counts.space_bits()
                + self.block_counts.space_bits() + 6 * SCALAR_BITS)
