# -*- coding: utf-8 -*-
"""
结构模块
包含精确位向量、部分和、近似 rank/select 结构与滑动窗口后缀和结构
"""

from .base_structure import BaseStructure
from .packed import PackedIntArray
from .bitvec import PlainBitVector, SparseBitVector, build_bitvector
from .psum import PartialSums
from .approx_bits import DRankSelectA, RankDSelectA
from .approx_multiset import MultisetFixedM, MultisetFixedMRD, MultisetBoundedFreq, characteristic_bits
from .wavelet import SeqRankSelect
from .approx_sequence import SeqApprox
from .stream_binary import BinaryStreamExact, BinaryStreamApprox
from .stream_integer import IntStreamExact, SsaSketch, Estimate, sketch_parameters
from .factory import StructureFactory, structure_class, BUILD_KINDS

__all__ = [
    'BaseStructure',
    'PackedIntArray',
    'PlainBitVector',
    'SparseBitVector',
    'build_bitvector',
    'PartialSums',
    'DRankSelectA',
    'RankDSelectA',
    'MultisetFixedM',
    'MultisetFixedMRD',
    'MultisetBoundedFreq',
    'characteristic_bits',
    'SeqRankSelect',
    'SeqApprox',
    'BinaryStreamExact',
    'BinaryStreamApprox',
    'IntStreamExact',
    'SsaSketch',
    'Estimate',
    'sketch_parameters',
    'StructureFactory',
    'structure_class',
    'BUILD_KINDS',
]
