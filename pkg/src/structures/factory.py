# -*- coding: utf-8 -*-
"""
结构工厂，按类型名创建静态结构，并提供类型名到类的映射（反序列化使用）
"""
from typing import Any, Dict, Optional, Type

from ..errors import ParameterError
from .base_structure import BaseStructure
from .packed import PackedIntArray
from .bitvec import PlainBitVector, SparseBitVector
from .psum import PartialSums
from .approx_bits import DRankSelectA, RankDSelectA
from .approx_multiset import MultisetFixedM, MultisetFixedMRD, MultisetBoundedFreq
from .wavelet import SeqRankSelect
from .approx_sequence import SeqApprox

# 可由 build 子命令创建的类型
BUILD_KINDS = ("plain", "sparse", "drank-select", "rank-dselect",
               "multiset", "multiset-rd", "bounded-freq", "sequence")

# 所有可序列化的类型
REGISTRY: Dict[str, Type[BaseStructure]] = {
    cls.kind: cls for cls in (PackedIntArray, PlainBitVector, SparseBitVector, PartialSums,
                              DRankSelectA, RankDSelectA, MultisetFixedM, MultisetFixedMRD,
                              MultisetBoundedFreq, SeqRankSelect, SeqApprox)
}


def structure_class(kind: str) -> Type[BaseStructure]:
    """
    类型名对应的结构类

    Raises:
        ParameterError: 未知类型
    """
    try:
        return REGISTRY[kind]
    except KeyError:
        raise ParameterError(f"不支持的结构类型: {kind}")


class StructureFactory:
    """
    结构工厂，用于创建不同类型的静态结构
    """
    @staticmethod
    def create(kind: str, data: Any, delta: Optional[int] = None, ell: Optional[int] = None,
               sigma: Optional[int] = None, sparse: Optional[bool] = None) -> BaseStructure:
        """
        创建结构

        Args:
            kind: 结构类型，如 'plain'、'drank-select'、'multiset'
            data: 位串、频率数组或符号序列
            delta: 加性误差 δ（近似结构必需）
            ell: 频率上界 ℓ（bounded-freq 必需）
            sigma: 字母表大小 σ（sequence 可选，默认取最大符号）
            sparse: 是否强制使用稀疏位向量（plain / drank-select）

        Returns:
            结构实例

        Raises:
            ParameterError: 不支持的类型或缺少参数
        """
        kind = kind.lower()
        if kind == "plain":
            return SparseBitVector.from_bits(data) if sparse else PlainBitVector.build(data)
        if kind == "sparse":
            return SparseBitVector.from_bits(data)
        if kind not in BUILD_KINDS:
            raise ParameterError(f"不支持的结构类型: {kind}")
        if delta is None:
            raise ParameterError(f"结构类型 {kind} 需要参数 δ")
        if kind == "drank-select":
            return DRankSelectA.build(data, delta, sparse)
        if kind == "rank-dselect":
            return RankDSelectA.build(data, delta)
        if kind == "multiset":
            return MultisetFixedM.build(data, delta)
        if kind == "multiset-rd":
            return MultisetFixedMRD.build(data, delta)
        if kind == "bounded-freq":
            if ell is None:
                raise ParameterError("bounded-freq 需要参数 ℓ")
            return MultisetBoundedFreq.build(data, delta, ell)
        if sigma is None:
            sigma = max((int(x) for x in data), default=1)
        return SeqApprox.build(data, sigma, delta)
