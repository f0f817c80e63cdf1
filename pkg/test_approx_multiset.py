#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
多重集近似 rank/select 的测试
包括固定基数的两种结构与有界频率结构
"""

import numpy as np
import pytest

from src.errors import RangeError, NotFoundError, ParameterError, ValidationError
from src.oracle import multiset_verdict, o_ms_rank
from src.structures import MultisetFixedM, MultisetFixedMRD, MultisetBoundedFreq, characteristic_bits

DELTAS = (1, 2, 3, 8, 64)
ELLS = (1, 2, 8)


def _random_freqs(rng, n, max_freq, zero_rate=0.3):
    freqs = rng.integers(1, max_freq + 1, size=n)
    freqs[rng.random(n) < zero_rate] = 0
    return freqs


def _sweep(structure, freqs, delta, drank_op, select_op):
    """穷举全部合法查询，返回违例数"""
    violations = 0
    n = len(freqs)
    m = int(np.sum(freqs))
    drank = structure.drank_a if drank_op == "drank" else structure.rank_a
    select = structure.select_a if select_op == "select" else structure.dselect_a
    for i in range(1, n + 1):
        violations += not multiset_verdict(drank_op, freqs, i, delta, drank(i)).ok
    for i in range(1, m + 1):
        violations += not multiset_verdict(select_op, freqs, i, delta, select(i)).ok
    return violations


def test_characteristic_bits():
    print("=== 测试特征向量 ===")
    assert characteristic_bits([2, 0, 1]).tolist() == [1, 1, 0, 0, 1, 0]
    assert characteristic_bits([]).tolist() == []
    print("特征向量测试完成\n")


def test_fixed_m_intervals():
    print("=== 测试固定基数多重集 drankA / selectA ===")
    rng = np.random.default_rng(31)
    violations = 0
    for _ in range(6):
        freqs = _random_freqs(rng, int(rng.integers(20, 150)), int(rng.choice([1, 4, 12])))
        for delta in DELTAS:
            s = MultisetFixedM.build(freqs, delta)
            violations += _sweep(s, freqs, delta, "drank", "select")
    assert violations == 0
    print("固定基数 drankA / selectA 测试完成\n")


def test_fixed_m_rank_dselect_intervals():
    print("=== 测试固定基数多重集 rankA / dselectA ===")
    rng = np.random.default_rng(32)
    violations = 0
    for _ in range(6):
        freqs = _random_freqs(rng, int(rng.integers(20, 150)), int(rng.choice([1, 4, 12])))
        for delta in DELTAS:
            s = MultisetFixedMRD.build(freqs, delta)
            violations += _sweep(s, freqs, delta, "rank", "dselect")
    assert violations == 0
    print("固定基数 rankA / dselectA 测试完成\n")


def test_bounded_freq_intervals():
    print("=== 测试有界频率多重集 ===")
    rng = np.random.default_rng(33)
    violations = 0
    modes = set()
    for _ in range(4):
        n = int(rng.integers(20, 120))
        for ell in ELLS:
            freqs = _random_freqs(rng, n, ell)
            for delta in DELTAS:
                s = MultisetBoundedFreq.build(freqs, delta, ell)
                modes.add(s.mode)
                violations += _sweep(s, freqs, delta, "drank", "select")
    assert violations == 0
    assert modes == {"dense", "sparse-freq"}
    print("有界频率测试完成\n")


def test_bounded_freq_single_select_fallback():
    print("=== 测试 µ' = 0 时的 select 退回 ===")
    freqs = np.array([2, 0, 2, 1, 2, 2, 0, 1] * 8)
    s = MultisetBoundedFreq.build(freqs, 3, 2)
    assert s.mode == "sparse-freq"
    assert s.bp_sel is None and s.dense is not None
    assert _sweep(s, freqs, 3, "drank", "select") == 0
    print("select 退回测试完成\n")


def test_delta_one_is_exact():
    print("=== 测试 δ = 1 时退化为精确查询 ===")
    freqs = [3, 0, 1, 2]
    s = MultisetFixedM.build(freqs, 1)
    for i in range(1, 5):
        assert s.drank_a(i) == o_ms_rank(freqs, i)
    assert [s.select_a(i) for i in range(1, 7)] == [1, 1, 1, 3, 4, 4]
    print("δ = 1 测试完成\n")


def test_errors():
    print("=== 测试多重集结构的错误处理 ===")
    with pytest.raises(ValidationError):
        MultisetFixedM.build([1, -1], 2)
    with pytest.raises(ParameterError):
        MultisetFixedMRD.build([1, 2], 0)
    with pytest.raises(ParameterError):
        MultisetFixedMRD.build([], 2)
    with pytest.raises(ValidationError):
        MultisetBoundedFreq.build([1, 3], 4, 2)
    s = MultisetFixedM.build([1, 2], 2)
    with pytest.raises(RangeError):
        s.drank_a(3)
    with pytest.raises(NotFoundError):
        s.select_a(4)
    rd = MultisetFixedMRD.build([1, 2], 2)
    with pytest.raises(RangeError):
        rd.rank_a(0)
    with pytest.raises(NotFoundError):
        rd.dselect_a(4)
    print("错误处理测试完成\n")


def test_bounded_freq_space():
    print("=== 测试有界频率结构的 drank 载荷 ===")
    n, ell, delta = 1000000, 1, 2
    freqs = np.random.default_rng(5).integers(0, ell + 1, size=n)
    s = MultisetBoundedFreq.build(freqs, delta, ell)
    lower = (n // -(-delta // ell))
    assert lower == 500000
    assert lower <= s.drank_space_bits() <= 2 * lower
    print("载荷测试完成\n")


def main():
    """运行所有测试"""
    print("开始测试多重集近似结构...\n")
    test_characteristic_bits()
    test_fixed_m_intervals()
    test_fixed_m_rank_dselect_intervals()
    test_bounded_freq_intervals()
    test_bounded_freq_single_select_fallback()
    test_delta_one_is_exact()
    test_errors()
    test_bounded_freq_space()
    print("所有测试完成！")


if __name__ == "__main__":
    main()
