#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
参照实现与区间校验的测试
"""

from fractions import Fraction

import pytest

from src.errors import RangeError, NotFoundError, ParameterError
from src.oracle import (o_rank, o_select, o_ms_rank, o_ms_select, o_seq_rank, o_seq_select, o_ss, o_iss,
                        ShadowStream, validate_interval, bits_verdict, multiset_verdict, sequence_verdict,
                        stream_verdict)


def test_bit_oracles():
    print("=== 测试位串参照实现 ===")
    assert o_rank("101", 1, 3) == 2
    assert o_rank([1, 0, 1], 0, 3) == 1
    assert o_rank([1, 0, 1], 1, 0) == 0
    assert o_select([0, 1, 1, 0, 1], 1, 3) == 5
    assert o_select([0, 1, 1, 0, 1], 0, 2) == 4
    assert o_select([0, 1], 1, 0) == 0
    with pytest.raises(RangeError):
        o_rank([1, 0], 1, 3)
    with pytest.raises(NotFoundError):
        o_select([1, 0], 1, 2)
    print("位串参照实现测试完成\n")


def test_multiset_and_sequence_oracles():
    print("=== 测试多重集与序列参照实现 ===")
    freqs = [2, 0, 3, 1]
    assert [o_ms_rank(freqs, i) for i in range(5)] == [0, 2, 2, 5, 6]
    assert [o_ms_select(freqs, i) for i in range(7)] == [0, 1, 1, 3, 3, 3, 4]
    with pytest.raises(NotFoundError):
        o_ms_select(freqs, 7)
    symbols = [1, 2, 1, 1, 2, 1, 3]
    assert o_seq_rank(symbols, 1, 4) == 3
    assert o_seq_rank(symbols, 3, 6) == 0
    assert o_seq_select(symbols, 2, 2) == 5
    print("多重集与序列参照实现测试完成\n")


def test_stream_oracles():
    print("=== 测试流参照实现 ===")
    history = [1, 0, 1, 1, 0]
    assert o_ss(history, 5, 3) == 2
    assert o_iss(history, 5, 2) == 3
    assert o_iss(history, 5, 0) == 0
    assert o_ss([2, 5, 0, 3], 4, 2) == 3
    # 窗口只含最近 n 个元素
    with pytest.raises(RangeError):
        o_ss([1, 1, 1, 0], 2, 3)
    with pytest.raises(NotFoundError):
        o_iss([1, 1, 1, 0], 2, 2)
    shadow = ShadowStream(3)
    for x in history:
        shadow.push(x)
    assert shadow.seen == 5 and shadow.window == 3
    assert shadow.window_values() == [1, 1, 0]
    assert shadow.ss(3) == 2 and shadow.iss(1) == 2
    print("流参照实现测试完成\n")


def test_validate_interval():
    print("=== 测试区间校验 ===")
    assert validate_interval("drank", {"exact": 5, "delta": 2}, 4).ok
    assert not validate_interval("drank", {"exact": 5, "delta": 2}, 3).ok
    assert not validate_interval("drank", {"exact": 5, "delta": 2}, 6).ok
    assert validate_interval("ss", {"exact": 3, "delta": 4}, Fraction(3, 2)).ok
    assert not validate_interval("ss", {"exact": 3, "delta": 4}, Fraction(7, 2)).ok
    # rank 区间退化时答案必须等于精确值
    assert validate_interval("rank", {"exact": 3, "lower": 3}, 3).ok
    assert not validate_interval("rank", {"exact": 3, "lower": 3}, 2).ok
    verdict = validate_interval("select", {"exact": 9, "lower": 4}, 4)
    assert not verdict.ok and (verdict.low, verdict.high) == (4, 9) and verdict.message
    with pytest.raises(ParameterError):
        validate_interval("median", {"exact": 1}, 1)
    print("区间校验测试完成\n")


def test_verdicts():
    print("=== 测试各类结构的校验 ===")
    bits = [1, 1, 0, 1, 0, 1, 1, 0]
    assert bits_verdict("drank", bits, 8, 2, 4).ok
    assert bits_verdict("rank", bits, 8, 2, 5).ok
    assert not bits_verdict("rank", bits, 8, 2, 4).ok
    assert bits_verdict("select", bits, 4, 2, 3).ok
    assert bits_verdict("dselect", bits, 4, 2, 5).ok
    # 覆盖条款：元素 2 的名次区间 [1, 5] 与 (2, 4] 相交
    freqs = [0, 5, 0]
    assert multiset_verdict("select", freqs, 4, 2, 2).ok
    assert not multiset_verdict("select", freqs, 4, 2, 1).ok
    assert multiset_verdict("drank", freqs, 3, 2, 4).ok
    symbols = [1, 2, 1, 1, 2, 1, 3]
    assert sequence_verdict("drank", symbols, 1, 7, 2, 3).ok
    assert sequence_verdict("select", symbols, 1, 3, 2, 2).ok
    history = [1, 0, 1, 1, 0]
    assert stream_verdict("iss", history, 5, 2, 1, 3).ok
    assert not stream_verdict("iss", history, 5, 2, 1, 2).ok
    assert stream_verdict("ss", history, 5, 5, 2, 2).ok
    print("各类结构校验测试完成\n")


def main():
    """运行所有测试"""
    print("开始测试参照实现...\n")
    test_bit_oracles()
    test_multiset_and_sequence_oracles()
    test_stream_oracles()
    test_validate_interval()
    test_verdicts()
    print("所有测试完成！")


if __name__ == "__main__":
    main()
