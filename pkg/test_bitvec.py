#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
位向量与打包数组的测试
包括字内 popcount/select、定宽打包数组、普通位向量和稀疏位向量
"""

import numpy as np
import pytest

from src.errors import ApproxRSError, RangeError, NotFoundError, ValidationError
from src.oracle import o_rank, o_select
from src.structures import PackedIntArray, PlainBitVector, SparseBitVector, StructureFactory, build_bitvector
from src.utils import as_bit_array, popcount, popcount64, select_in_word, select_from_high, pack_bits, unpack_bits


def _check_exact(bv, bits):
    """逐个位置与参照实现比较 rank/select/access"""
    bits = [int(b) for b in bits]
    ones = sum(bits)
    zeros = len(bits) - ones
    prefix = np.concatenate([[0], np.cumsum(bits)])
    for i in range(len(bits) + 1):
        assert bv.rank1(i) == prefix[i]
        assert bv.rank0(i) == i - prefix[i]
    one_pos = [p + 1 for p, b in enumerate(bits) if b]
    zero_pos = [p + 1 for p, b in enumerate(bits) if not b]
    for k in range(1, ones + 1):
        assert bv.select1(k) == one_pos[k - 1]
    for k in range(1, zeros + 1):
        assert bv.select0(k) == zero_pos[k - 1]
    for i in range(1, len(bits) + 1):
        assert bv.access(i) == bits[i - 1]


def test_word_helpers():
    print("=== 测试字内 popcount 与 select ===")
    rng = np.random.default_rng(7)
    words = rng.integers(0, 2 ** 63, size=200, dtype=np.uint64) * np.uint64(2) + np.uint64(1)
    counts = popcount64(words)
    for w, c in zip(words, counts):
        w = int(w)
        assert int(c) == popcount(w)
        ones = [b for b in range(64) if (w >> b) & 1]
        for k in range(1, len(ones) + 1):
            assert select_in_word(w, k) == ones[k - 1]
        assert select_from_high(w, 1) == ones[-1]
    print("字内操作测试完成\n")


def test_pack_roundtrip_edges():
    print("=== 测试位打包边界 ===")
    for n in (0, 1, 63, 64, 65, 200):
        bits = (np.arange(n) % 3 == 0).astype(np.uint8)
        assert unpack_bits(pack_bits(bits), n).tolist() == bits.tolist()
    print("位打包边界测试完成\n")


def test_packed_int_array():
    print("=== 测试定宽打包数组 ===")
    rng = np.random.default_rng(11)
    for width in (1, 3, 7, 13, 31, 64):
        values = rng.integers(0, 2 ** min(width, 50), size=300, dtype=np.int64)
        arr = PackedIntArray.build(values, width)
        assert [arr.get(i) for i in range(300)] == values.tolist()
        assert arr.to_numpy().tolist() == values.tolist()
        for start, stop in ((0, 300), (5, 77), (64, 65), (10, 10)):
            assert arr.range_sum(start, stop) == int(values[start:stop].sum())
        arr.set(17, 1)
        assert arr.get(17) == 1
        assert arr.get(16) == values[16] and arr.get(18) == values[18]
    with pytest.raises(ValidationError):
        PackedIntArray.build([8], 3)
    with pytest.raises(RangeError):
        PackedIntArray.zeros(4, 3).get(4)
    print("定宽打包数组测试完成\n")


def test_plain_bitvector_exhaustive():
    print("=== 测试普通位向量（穷举） ===")
    rng = np.random.default_rng(20240601)
    for n in (0, 1, 5, 64, 511, 512, 513, 2048):
        for density in (0.0, 0.1, 0.5, 1.0):
            bits = (rng.random(n) < density).astype(np.uint8)
            _check_exact(PlainBitVector.build(bits), bits)
    print("普通位向量测试完成\n")


def test_plain_bitvector_select_samples():
    print("=== 测试跨越 select 采样点的位向量 ===")
    rng = np.random.default_rng(3)
    bits = (rng.random(40000) < 0.6).astype(np.uint8)
    bv = PlainBitVector.build(bits)
    one_pos = np.flatnonzero(bits) + 1
    zero_pos = np.flatnonzero(bits == 0) + 1
    for k in rng.integers(1, one_pos.size + 1, size=2000):
        assert bv.select1(int(k)) == one_pos[k - 1]
    for k in rng.integers(1, zero_pos.size + 1, size=2000):
        assert bv.select0(int(k)) == zero_pos[k - 1]
    for i in rng.integers(0, bits.size + 1, size=2000):
        assert bv.rank1(int(i)) == int(bits[:i].sum())
    print("采样点测试完成\n")


def test_plain_bitvector_errors():
    print("=== 测试普通位向量的错误处理 ===")
    bv = PlainBitVector.build("101")
    assert bv.rank1(3) == o_rank("101", 1, 3) == 2
    with pytest.raises(RangeError):
        bv.rank1(4)
    with pytest.raises(RangeError):
        bv.access(0)
    with pytest.raises(NotFoundError):
        bv.select1(3)
    with pytest.raises(NotFoundError):
        bv.select0(2)
    print("错误处理测试完成\n")


def test_sparse_bitvector_exhaustive():
    print("=== 测试稀疏位向量（穷举） ===")
    rng = np.random.default_rng(5)
    for n in (1, 7, 100, 1000, 2048):
        for density in (0.0, 0.01, 0.2, 0.9):
            bits = (rng.random(n) < density).astype(np.uint8)
            sv = SparseBitVector.from_bits(bits)
            _check_exact(sv, bits)
            assert sv.positions() == [p + 1 for p in np.flatnonzero(bits)]
    print("稀疏位向量测试完成\n")


def test_sparse_bitvector_validation():
    print("=== 测试稀疏位向量的输入校验 ===")
    with pytest.raises(ValidationError):
        SparseBitVector.build(10, [3, 3])
    with pytest.raises(ValidationError):
        SparseBitVector.build(10, [0, 4])
    with pytest.raises(ValidationError):
        SparseBitVector.build(10, [4, 11])
    sv = SparseBitVector.build(10, [2, 9])
    assert sv.select1(2) == o_select([0, 1, 0, 0, 0, 0, 0, 0, 1, 0], 1, 2) == 9
    print("输入校验测试完成\n")


def test_invalid_bits_error_type():
    print("=== 测试非法位串的异常类型 ===")
    for bad in ([0, 2, 1], "01a1", [-1], ["x"]):
        with pytest.raises(ValidationError) as info:
            StructureFactory.create("plain", bad)
        assert isinstance(info.value, ApproxRSError)
        with pytest.raises(ValidationError):
            as_bit_array(bad)
    print("异常类型测试完成\n")


def test_build_bitvector_density():
    print("=== 测试按密度选择位向量 ===")
    dense = (np.arange(4096) % 2).astype(np.uint8)
    sparse = np.zeros(4096, dtype=np.uint8)
    sparse[[10, 2000, 4000]] = 1
    assert isinstance(build_bitvector(dense), PlainBitVector)
    assert isinstance(build_bitvector(sparse, sparse=True), SparseBitVector)
    assert isinstance(build_bitvector(dense, sparse=False), PlainBitVector)
    print("密度选择测试完成\n")


def test_plain_space_ratio():
    print("=== 测试普通位向量空间 ===")
    n = 1 << 20
    bits = (np.random.default_rng(1).random(n) < 0.5).astype(np.uint8)
    bv = PlainBitVector.build(bits)
    assert bv.space_bits() <= 1.25 * n
    print(f"空间比值: {bv.space_bits() / n:.4f}")
    print("空间测试完成\n")


def main():
    """运行所有测试"""
    print("开始测试位向量...\n")
    test_word_helpers()
    test_pack_roundtrip_edges()
    test_packed_int_array()
    test_plain_bitvector_exhaustive()
    test_plain_bitvector_select_samples()
    test_plain_bitvector_errors()
    test_sparse_bitvector_exhaustive()
    test_sparse_bitvector_validation()
    test_invalid_bits_error_type()
    test_build_bitvector_density()
    test_plain_space_ratio()
    print("所有测试完成！")


if __name__ == "__main__":
    main()
