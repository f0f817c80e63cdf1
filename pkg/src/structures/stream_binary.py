# -*- coding: utf-8 -*-
"""
二进制流上的滑动窗口后缀和

BinaryStreamExact：精确 ss / iss，窗口位存放在 1 位宽环形数组中；
iss 使用每帧一份的 1 位置目录（OnePositions），当前帧与上一帧各一份，帧结束时交换
BinaryStreamApprox：加性误差 δ 的 ssA / issA。帧按 δ 切成 ⌈n/δ⌉ 个块，
块结束时向容量 ⌈n/δ⌉ 的虚拟流推入 g：块内含有本帧第 jδ 个 1 时 g = 1，否则 g = 0。
"""
from typing import Callable, Dict, List

from ..errors import RangeError, NotFoundError, ParameterError, ValidationError
from ..utils import bits_needed, ceil_log2, low_mask, popcount, select_from_high
from .base_structure import SCALAR_BITS
from .stream_base import FramedWindow


class OnePositions:
    """
    一帧内 1 的位置目录

    每 K 个 1 记一个标记，标记之间为一段。段结束时跨度超过 K² 的长段保存段内全部位置，
    短段只保存每 K2 个 1 的段内偏移，其余由字内扫描补齐。未结束的段保存全部位置。
    K = ⌈lg n⌉·⌈lg lg n⌉，K2 = ⌈lg lg n⌉²。
    """

    def __init__(self, n: int):
        self.n = n
        lg = max(1, ceil_log2(n))
        lglg = max(1, ceil_log2(lg))
        self.k = lg * lglg
        self.k2 = lglg * lglg
        self.width = bits_needed(n)
        self.offset_width = bits_needed(self.k * self.k)
        self.marks: List[int] = []
        self.long: Dict[int, List[int]] = {}
        self.subs: Dict[int, List[int]] = {}
        self.pending: List[int] = []
        self.count = 0

    def add(self, p: int) -> None:
        """记录帧内下标 p 处的 1（按下标递增调用）"""
        if self.count % self.k == 0:
            if self.count:
                self._close(p)
            self.marks.append(p)
        self.pending.append(p)
        self.count += 1

    def _close(self, stop: int) -> None:
        seg = len(self.marks) - 1
        start = self.marks[seg]
        if stop - start > self.k * self.k:
            self.long[seg] = self.pending
        else:
            self.subs[seg] = [p - start for p in self.pending[::self.k2]]
        self.pending = []

    def finish(self) -> None:
        """帧结束，关闭最后一段"""
        if self.pending:
            self._close(self.n)

    def _segment_length(self, seg: int) -> int:
        return self.k if seg + 1 < len(self.marks) else self.count - seg * self.k

    def locate(self, r: int, select_backward: Callable[[int, int, int], int]) -> int:
        """
        第 r 个 1 的帧内下标

        Args:
            r: 名次，1 ≤ r ≤ count
            select_backward: (start, stop, k) -> [start, stop) 中从末尾数第 k 个 1 的下标
        """
        seg, off = divmod(r - 1, self.k)
        if seg == len(self.marks) - 1 and self.pending:
            return self.pending[off]
        if seg in self.long:
            return self.long[seg][off]
        start = self.marks[seg]
        subs = self.subs[seg]
        j = off // self.k2
        if j + 1 < len(subs):
            upper, upper_off = start + subs[j + 1], (j + 1) * self.k2
        else:
            upper = self.marks[seg + 1] if seg + 1 < len(self.marks) else self.n
            upper_off = self._segment_length(seg)
        # 从上界往回数，只读到目标位为止
        return select_backward(start + subs[j], upper, upper_off - off)

    def space_bits(self) -> int:
        positions = len(self.marks) + len(self.pending) + sum(len(v) for v in self.long.values())
        offsets = sum(len(v) for v in self.subs.values())
        return positions * self.width + offsets * self.offset_width + 2 * SCALAR_BITS


class BinaryStreamExact(FramedWindow):
    """
    精确二进制滑动窗口
    """

    def __init__(self, n: int):
        super().__init__(n, 1)
        self.ones = OnePositions(self.n)
        self.prev_ones = OnePositions(self.n)

    def push(self, bit: int) -> None:
        """
        推入一个位

        Raises:
            ValidationError: bit 不是 0 或 1
        """
        if bit not in (0, 1):
            raise ValidationError(f"二进制流只接受 0 或 1: {bit}")
        if bit:
            self.ones.add(self.t)
        self._append(int(bit))
        if self.t == 0:
            self.ones.finish()
            self.prev_ones = self.ones
            self.ones = OnePositions(self.n)

    def _word(self, w: int) -> int:
        return int(self.ring.words[w])

    def _select_backward(self, start: int, stop: int, k: int) -> int:
        """[start, stop) 中从末尾数第 k 个 1 的下标"""
        w = (stop - 1) >> 6
        while True:
            lo = max(start, w << 6) - (w << 6)
            hi = min(stop, (w + 1) << 6) - (w << 6)
            word = self._word(w) & (low_mask(hi) ^ low_mask(lo))
            cnt = popcount(word)
            if k <= cnt:
                return (w << 6) + select_from_high(word, k)
            k -= cnt
            w -= 1

    def select_current(self, k: int) -> int:
        """当前帧第 k 个 1 的下标（1 ≤ k ≤ c）"""
        return self.ones.locate(k, self._select_backward)

    def select_previous(self, k: int) -> int:
        """上一帧第 k 个 1 的下标，该位必须位于 t..n-1"""
        return self.prev_ones.locate(k, self._select_backward)

    def iss(self, i: int) -> int:
        """
        最小的 j 使最近 j 位中至少有 i 个 1

        Raises:
            NotFoundError: 窗口中 1 的个数少于 i
        """
        if i < 1:
            raise NotFoundError(f"名次必须至少为 1: {i}")
        if i <= self.c:
            return self.t - self.select_current(self.c - i + 1)
        k = i - self.c
        if self.seen < self.n or k > self.suffix_previous(self.t):
            raise NotFoundError(f"窗口中不足 {i} 个 1")
        return self.t + self.n - self.select_previous(self.prev_total - k + 1)

    def verify_directories(self) -> bool:
        """ss 目录之外，再由环形数组核对两帧的 1 位置目录"""
        if not super().verify_directories():
            return False
        current = [p for p in range(self.t) if self.ring.get(p)]
        if self.ones.count != len(current) or self.ones.marks != current[::self.ones.k]:
            return False
        for r, p in enumerate(current, 1):
            if self.select_current(r) != p:
                return False
        if self.seen < self.n:
            return True
        kept = [p for p in range(self.t, self.n) if self.ring.get(p)]
        if self.prev_ones.count != self.prev_total or self.prev_ones.pending:
            return False
        first = self.prev_total - len(kept) + 1
        return all(self.select_previous(first + j) == p for j, p in enumerate(kept))

    def space_bits(self) -> int:
        return super().space_bits() + self.ones.space_bits() + self.prev_ones.space_bits()


class BinaryStreamApprox:
    """
    加性误差 δ 的二进制滑动窗口
    """

    def __init__(self, n: int, delta: int):
        if n < 1:
            raise ParameterError(f"窗口容量必须至少为 1: {n}")
        if delta < 1 or delta > n:
            raise ParameterError(f"δ 必须在 1..{n} 之间: {delta}")
        self.n = int(n)
        self.delta = int(delta)
        self.chunks = (self.n + self.delta - 1) // self.delta
        self.inner = BinaryStreamExact(self.chunks)
        self.t = 0
        self.c = 0
        self.tc = 0
        self.prev_total = 0
        self.seen = 0

    @property
    def window(self) -> int:
        return min(self.n, self.seen)

    def push(self, bit: int) -> None:
        """
        推入一个位；块结束时向虚拟流推入 g

        Raises:
            ValidationError: bit 不是 0 或 1
        """
        if bit not in (0, 1):
            raise ValidationError(f"二进制流只接受 0 或 1: {bit}")
        bit = int(bit)
        self.t += 1
        self.c += bit
        self.tc += bit
        self.seen += 1
        if self.t % self.delta == 0 or self.t == self.n:
            self.inner.push(self._open_bit())
            self.tc = 0
        if self.t == self.n:
            self.prev_total = self.c
            self.c = 0
            self.t = 0

    def _open_bit(self) -> int:
        """当前（未结束）块是否含有本帧第 jδ 个 1"""
        return int(self.c // self.delta > (self.c - self.tc) // self.delta)

    def _ssg(self, k: int) -> int:
        return self.inner.ss(k) if k > 0 else 0

    def _virtual_bit(self, k: int) -> int:
        """虚拟流中倒数第 k 位"""
        return self._ssg(k) - self._ssg(k - 1)

    def _check_window(self, i: int) -> None:
        if i < 1 or i > self.window:
            raise RangeError(f"后缀长度越界: {i}（窗口长度 {self.window}）")

    def _drank_current(self, x: int) -> int:
        """当前帧前 x 位中 1 的个数的 δ 近似下界"""
        cc = self.t // self.delta
        k, rem = divmod(x, self.delta)
        r = self.delta * (self._ssg(cc) - self._ssg(cc - k))
        if rem:
            g = self._virtual_bit(cc - k) if k < cc else self._open_bit()
            r += rem * g
        return r

    def _drank_previous(self, x: int) -> int:
        """上一帧前 x 位中 1 的个数的 δ 近似下界（x ≥ t）"""
        cc = self.t // self.delta
        k, rem = divmod(x, self.delta)
        dist = cc + self.chunks - k
        r = self.delta * (self.prev_total // self.delta - (self._ssg(dist) - self._ssg(cc)))
        if rem:
            r += rem * self._virtual_bit(dist)
        return r

    def ss_a(self, i: int) -> int:
        """
        ssA(i)：满足 ss(i) - δ < r ≤ ss(i)

        Raises:
            RangeError: i 不在 1..min(n, 已到达元素数)
        """
        self._check_window(i)
        if i < self.delta:
            return 0
        if i <= self.t:
            return max(0, self.c - self._drank_current(self.t - i) - self.delta + 1)
        x = self.n - (i - self.t)
        return max(0, self.c + self.prev_total - self._drank_previous(x) - self.delta + 1)

    def _select_current(self, i: int) -> int:
        """当前帧第 i 个 1 的 δ 近似位置（1 起始）"""
        j = i // self.delta
        if j == 0:
            return i
        cc = self.t // self.delta
        closed = self._ssg(cc)
        if j > closed:
            b = cc + 1
        else:
            b = cc - self.inner.iss(closed - j + 1) + 1
        return self.delta * (b - 1) + (i % self.delta) + 1

    def _select_previous(self, i: int) -> int:
        """上一帧第 i 个 1 的 δ 近似位置（1 起始）"""
        j = i // self.delta
        if j == 0:
            return i
        cc = self.t // self.delta
        rank_from_end = self._ssg(cc) + self.prev_total // self.delta - j + 1
        b = cc + self.chunks - self.inner.iss(rank_from_end) + 1
        return self.delta * (b - 1) + (i % self.delta) + 1

    def iss_a(self, i: int) -> int:
        """
        issA(i)：满足 iss(i - δ) < r ≤ iss(i)

        Raises:
            NotFoundError: i < 1 或 i 超过窗口内 1 的个数的估计上界
        """
        if i < 1:
            raise NotFoundError(f"名次必须至少为 1: {i}")
        w = self.window
        if w == 0 or i > self.ss_a(w) + self.delta - 1:
            raise NotFoundError(f"窗口中不足 {i} 个 1")
        if i <= self.c:
            if i <= self.delta:
                return i
            q = self._select_current(self.c - i + 1 + self.delta) - 1
            return min(w, self.t + 1 - q)
        if i - self.delta <= self.c:
            return min(w, self.t + 1)
        k = self.prev_total - (i - self.c) + 1
        if k < 1:
            return w
        try:
            q = self._select_previous(k + self.delta) - 1
        except NotFoundError:
            return w
        return min(w, self.t + self.n + 1 - q)

    def virtual_bits(self):
        """虚拟流窗口内的位，最旧在前"""
        return self.inner.window_values()

    def space_bits(self) -> int:
        return self.inner.space_bits() + 7 * SCALAR_BITS
