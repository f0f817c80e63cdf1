# -*- coding: utf-8 -*-
"""
多重集上的 δ 近似 rank/select

多重集 S ⊆ {1..n} 以频率数组 f[1..n] 表示，特征向量 B_S = 1^{f1} 0 1^{f2} 0 … 1^{fn} 0。
- MultisetFixedM：只保留 B_S 中每第 iδ 个 1 得到 B'_S（稀疏位向量），支持 drankA / selectA
- MultisetFixedMRD：在 B_S 上按 δ 分块，保存各块 0 与 1 的个数，支持 rankA / dselectA
- MultisetBoundedFreq：每个元素频率不超过 ℓ；δ ≤ ℓ 时退化为 MultisetFixedM，
  δ > ℓ 时按元素分块保存标记位串
"""
from typing import Any, Dict, Optional, Sequence, Union

import numpy as np

from ..errors import RangeError, NotFoundError, ParameterError, ValidationError
from ..utils import bits_needed
from .base_structure import BaseStructure, SCALAR_BITS
from .bitvec import PlainBitVector, SparseBitVector
from .approx_bits import RankDSelectA
from .psum import PartialSums

FreqLike = Union[Sequence[int], np.ndarray]


def normalize_frequencies(freqs: FreqLike) -> np.ndarray:
    """
    校验并返回 int64 频率数组

    Raises:
        ValidationError: 出现负频率
    """
    arr = np.asarray(freqs, dtype=np.int64).ravel() if len(freqs) else np.zeros(0, dtype=np.int64)
    if arr.size and arr.min() < 0:
        raise ValidationError("频率不能为负")
    return arr


def characteristic_bits(freqs: FreqLike) -> np.ndarray:
    """
    特征向量 B_S

    Returns:
        uint8 数组，长度 n + m
    """
    f = normalize_frequencies(freqs)
    n = int(f.size)
    m = int(f.sum())
    bits = np.ones(n + m, dtype=np.uint8)
    if n:
        zero_pos = np.cumsum(f) + np.arange(n, dtype=np.int64)
        bits[zero_pos] = 0
    return bits


def _crossing_blocks(cum: np.ndarray, step: int, block: int, n: int) -> np.ndarray:
    """
    返回包含某个 step 倍数名次的元素块编号（从 1 开始，块大小 block 个元素）

    Args:
        cum: 频率前缀和，cum[e] = f[1] + … + f[e]，cum[0] = 0
        step: 名次步长
        block: 每块元素个数
        n: 元素个数
    """
    m = int(cum[-1])
    targets = np.arange(step, m + 1, step, dtype=np.int64)
    owners = np.searchsorted(cum, targets, side="left")
    return np.unique((owners - 1) // block + 1)


class MultisetFixedM(BaseStructure):
    """
    固定基数 m 的多重集 drankA / selectA
    """

    kind = "multiset"

    def __init__(self, n: int, m: int, delta: int, bps: SparseBitVector):
        self.n = int(n)
        self.m = int(m)
        self.delta = int(delta)
        self.bps = bps

    @classmethod
    def build(cls, freqs: FreqLike, delta: int) -> "MultisetFixedM":
        """
        构建 B'_S，长度 n + ⌊m/δ⌋，含 n 个 0 与 ⌊m/δ⌋ 个 1

        Args:
            freqs: 频率数组 f[1..n]
            delta: 加性误差 δ

        Raises:
            ParameterError: δ < 1
        """
        if delta < 1:
            raise ParameterError(f"δ 必须至少为 1: {delta}")
        f = normalize_frequencies(freqs)
        n = int(f.size)
        cum = np.concatenate(([0], np.cumsum(f))).astype(np.int64)
        m = int(cum[-1])
        kept = m // delta
        ranks = np.arange(1, kept + 1, dtype=np.int64) * delta
        owners = np.searchsorted(cum, ranks, side="left")
        positions = owners - 1 + np.arange(1, kept + 1, dtype=np.int64)
        bps = SparseBitVector.build(n + kept, positions)
        return cls(n, m, delta, bps)

    def drank_a(self, i: int) -> int:
        """
        drankA(i, S)：返回 δ(select0(i, B'_S) - i)，满足 rank(i) - δ < r ≤ rank(i)

        Raises:
            RangeError: i 不在 1..n
        """
        if i < 1 or i > self.n:
            raise RangeError(f"元素越界: {i}（全集大小 {self.n}）")
        return self.delta * (self.bps.select0(i) - i)

    def select_a(self, i: int) -> int:
        """
        selectA(i, S)：返回含第 ⌊i/δ⌋δ 个名次的元素，⌊i/δ⌋ = 0 时返回 1

        Raises:
            NotFoundError: i 不在 1..m
        """
        if i < 1 or i > self.m:
            raise NotFoundError(f"不存在第 {i} 个元素（共 {self.m} 个）")
        j = i // self.delta
        if j == 0:
            return 1
        return self.bps.rank0(self.bps.select1(j)) + 1

    def space_bits(self) -> int:
        return self.bps.space_bits() + 3 * SCALAR_BITS

    def to_state(self) -> Dict[str, Any]:
        return {"n": self.n, "m": self.m, "delta": self.delta, "bps": self.bps}

    @classmethod
    def from_state(cls, state: Dict[str, Any]) -> "MultisetFixedM":
        return cls(state["n"], state["m"], state["delta"], state["bps"])


class MultisetFixedMRD(BaseStructure):
    """
    固定基数 m 的多重集 rankA / dselectA

    B_S 按 δ 分块：D 存各块 0 的个数，E 存各块 1 的个数，dsel 为 B_S 上的 RankDSelectA。
    """

    kind = "multiset-rd"

    def __init__(self, n: int, m: int, delta: int, zeros: PartialSums, ones: PartialSums, dsel: RankDSelectA):
        self.n = int(n)
        self.m = int(m)
        self.delta = int(delta)
        self.zeros = zeros
        self.ones = ones
        self.dsel = dsel

    @classmethod
    def build(cls, freqs: FreqLike, delta: int) -> "MultisetFixedMRD":
        """
        构建 D、E 与 dsel；δ 超过 B_S 长度时按 B_S 长度分块（误差只会更小）

        Raises:
            ParameterError: δ < 1 或全集为空
        """
        if delta < 1:
            raise ParameterError(f"δ 必须至少为 1: {delta}")
        bits = characteristic_bits(freqs)
        n = int(bits.size - bits.sum())
        if n < 1:
            raise ParameterError("全集大小必须至少为 1")
        m = int(bits.sum())
        block = min(delta, int(bits.size))
        dsel = RankDSelectA.build(bits, block)
        ones = cls._block_ones(bits, block)
        lengths = np.minimum(np.arange(1, dsel.nblocks + 1, dtype=np.int64) * block, bits.size) \
            - np.arange(dsel.nblocks, dtype=np.int64) * block
        width = bits_needed(block)
        zeros_ps = PartialSums.build(lengths - ones, width)
        ones_ps = PartialSums.build(ones, width)
        return cls(n, m, block, zeros_ps, ones_ps, dsel)

    @staticmethod
    def _block_ones(bits: np.ndarray, block: int) -> np.ndarray:
        starts = np.arange(0, bits.size, block, dtype=np.int64)
        return np.add.reduceat(bits.astype(np.int64), starts)

    def rank_a(self, i: int) -> int:
        """
        rankA(i, S)：满足 rank(i-δ) < r ≤ rank(i)，rank(i-δ) = rank(i) 时 r = rank(i)

        Raises:
            RangeError: i 不在 1..n
        """
        if i < 1 or i > self.n:
            raise RangeError(f"元素越界: {i}（全集大小 {self.n}）")
        j = self.zeros.search(i - 1)
        r = self.ones.sum(j - 1)
        f = self.dsel.first_offset(j)
        if f and f - 1 < i - self.zeros.sum(j - 1):
            r += 1
        return r

    def dselect_a(self, i: int) -> int:
        """
        dselectA(i, S)：满足 select(i) - δ < p ≤ select(i)

        Raises:
            NotFoundError: i 不在 1..m
        """
        if i < 1 or i > self.m:
            raise NotFoundError(f"不存在第 {i} 个元素（共 {self.m} 个）")
        k = (self.dsel.dselect_a(i) - 1) // self.delta + 1
        return self.zeros.sum(k - 1) + 1

    def space_bits(self) -> int:
        return self.zeros.space_bits() + self.ones.space_bits() + self.dsel.space_bits() + 3 * SCALAR_BITS

    def to_state(self) -> Dict[str, Any]:
        return {"n": self.n, "m": self.m, "delta": self.delta,
                "zeros": self.zeros, "ones": self.ones, "dsel": self.dsel}

    @classmethod
    def from_state(cls, state: Dict[str, Any]) -> "MultisetFixedMRD":
        return cls(state["n"], state["m"], state["delta"], state["zeros"], state["ones"], state["dsel"])


class MultisetBoundedFreq(BaseStructure):
    """
    元素频率不超过 ℓ 的多重集 drankA / selectA

    δ ≤ ℓ：密集模式，直接使用 MultisetFixedM。
    δ > ℓ：稀疏频率模式。µ = ⌊δ/ℓ⌋，Bp_drank[k] = 1 当且仅当第 k 个 µ 元素块含某个 δ 倍数名次；
    h = ⌊δ/2⌋，µ' = ⌊δ/2ℓ⌋，Bp_sel[k] = 1 当且仅当第 k 个 µ' 元素块含某个 h 倍数名次。
    µ' = 0 时 select 退回 MultisetFixedM。
    """

    kind = "bounded-freq"

    def __init__(self, n: int, m: int, delta: int, ell: int, dense: Optional[MultisetFixedM],
                 bp_drank: Optional[PlainBitVector], bp_sel: Optional[PlainBitVector]):
        self.n = int(n)
        self.m = int(m)
        self.delta = int(delta)
        self.ell = int(ell)
        self.dense = dense
        self.bp_drank = bp_drank
        self.bp_sel = bp_sel
        self.mu = self.delta // self.ell
        self.mu_sel = self.delta // (2 * self.ell)
        self.half = self.delta // 2

    @property
    def mode(self) -> str:
        return "dense" if self.delta <= self.ell else "sparse-freq"

    @classmethod
    def build(cls, freqs: FreqLike, delta: int, ell: int) -> "MultisetBoundedFreq":
        """
        构建有界频率结构

        Args:
            freqs: 频率数组 f[1..n]
            delta: 加性误差 δ
            ell: 频率上界 ℓ

        Raises:
            ParameterError: δ < 1 或 ℓ < 1
            ValidationError: 某个频率超过 ℓ
        """
        if delta < 1 or ell < 1:
            raise ParameterError(f"δ 与 ℓ 必须至少为 1: δ={delta}, ℓ={ell}")
        f = normalize_frequencies(freqs)
        if f.size and int(f.max()) > ell:
            raise ValidationError(f"元素频率 {int(f.max())} 超过上界 ℓ={ell}")
        n = int(f.size)
        m = int(f.sum())
        if delta <= ell:
            return cls(n, m, delta, ell, MultisetFixedM.build(f, delta), None, None)
        cum = np.concatenate(([0], np.cumsum(f))).astype(np.int64)
        mu = delta // ell
        bp_drank = cls._marks(cum, delta, mu, n)
        mu_sel = delta // (2 * ell)
        if mu_sel == 0:
            return cls(n, m, delta, ell, MultisetFixedM.build(f, delta), bp_drank, None)
        bp_sel = cls._marks(cum, delta // 2, mu_sel, n)
        return cls(n, m, delta, ell, None, bp_drank, bp_sel)

    @staticmethod
    def _marks(cum: np.ndarray, step: int, block: int, n: int) -> PlainBitVector:
        nblocks = (n + block - 1) // block
        bits = np.zeros(nblocks, dtype=np.uint8)
        marked = _crossing_blocks(cum, step, block, n)
        if marked.size:
            bits[marked - 1] = 1
        return PlainBitVector.build(bits)

    def drank_a(self, i: int) -> int:
        """
        drankA(i, S)：满足 rank(i) - δ < r ≤ rank(i)

        Raises:
            RangeError: i 不在 1..n
        """
        if i < 1 or i > self.n:
            raise RangeError(f"元素越界: {i}（全集大小 {self.n}）")
        if self.bp_drank is None:
            return self.dense.drank_a(i)
        q, rem = divmod(i, self.mu)
        r = self.delta * self.bp_drank.rank1(q)
        if rem:
            r += self.ell * rem * self.bp_drank.access(q + 1)
        return r

    def select_a(self, i: int) -> int:
        """
        selectA(i, S)：满足 select(i-δ) < p ≤ select(i)

        Raises:
            NotFoundError: i 不在 1..m
        """
        if i < 1 or i > self.m:
            raise NotFoundError(f"不存在第 {i} 个元素（共 {self.m} 个）")
        if self.bp_sel is None:
            return self.dense.select_a(i)
        j = i // self.half
        if j == 0:
            return 1
        return self.mu_sel * (self.bp_sel.select1(j) - 1) + 1

    def space_bits(self) -> int:
        total = 4 * SCALAR_BITS
        for part in (self.dense, self.bp_drank, self.bp_sel):
            if part is not None:
                total += part.space_bits()
        return total

    def drank_space_bits(self) -> int:
        """稀疏频率模式下 drank 标记位串的载荷位数"""
        return 0 if self.bp_drank is None else self.bp_drank.n

    def to_state(self) -> Dict[str, Any]:
        state = {"n": self.n, "m": self.m, "delta": self.delta, "ell": self.ell}
        if self.dense is not None:
            state["dense"] = self.dense
        if self.bp_drank is not None:
            state["bp_drank"] = self.bp_drank
        if self.bp_sel is not None:
            state["bp_sel"] = self.bp_sel
        return state

    @classmethod
    def from_state(cls, state: Dict[str, Any]) -> "MultisetBoundedFreq":
        return cls(state["n"], state["m"], state["delta"], state["ell"],
                   state.get("dense"), state.get("bp_drank"), state.get("bp_sel"))
