#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
空间审计的测试
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from src.errors import ParameterError
from src.space_audit import (audit_formula, audit_structure, bounded_freq_lower_bound, drank_lower_bound,
                             log2_binomial, rank_lower_bound, sketch_formula, SUBSTITUTED_KINDS)
from src.structures import StructureFactory, SsaSketch, IntStreamExact, BinaryStreamApprox


def test_lower_bounds():
    print("=== 测试下界公式 ===")
    assert drank_lower_bound(10 ** 6, 64) == 15625
    assert bounded_freq_lower_bound(10 ** 6, 2, 1) == 500000
    assert rank_lower_bound(10 ** 6, 64) == (10 ** 6 // 128) * 6
    assert math.isclose(log2_binomial(4, 2), math.log2(6))
    assert log2_binomial(10, 11) == 0.0
    assert sketch_formula(8, 2, 4) == 7
    print("下界公式测试完成\n")


def test_formula_mode():
    print("=== 测试 formula 模式 ===")
    report = audit_formula("drank-select", n=10 ** 6, delta=64)
    assert report.upper_formula_bits == 15625 and report.lower_formula_bits == 15625
    assert report.measured_bits is None and report.upper_ratio is None
    row = report.to_row()
    assert row["kind"] == "drank-select" and row["n"] == 10 ** 6 and row["delta"] == 64
    assert row["m"] is None
    report = audit_formula("bounded-freq", n=10 ** 6, m=10 ** 6, delta=2, ell=1)
    assert report.lower_formula_bits == 500000
    assert report.upper_formula_bits == 500000
    assert audit_formula("sparse", n=1000, m=10).substituted
    assert "sparse" in SUBSTITUTED_KINDS
    with pytest.raises(ParameterError):
        audit_formula("drank-select", n=100)
    with pytest.raises(ParameterError):
        audit_formula("bounded-freq", n=100, m=5, delta=2)
    with pytest.raises(ParameterError):
        audit_formula("fenwick", n=100, delta=2)
    print("formula 模式测试完成\n")


def test_measured_mode():
    print("=== 测试 measured 模式 ===")
    bits = (np.random.default_rng(81).random(1 << 16) < 0.5).astype(np.uint8)
    structure = StructureFactory.create("drank-select", bits, delta=64)
    report = audit_structure(structure)
    assert report.measured_bits == structure.space_bits()
    assert report.upper_ratio == Fraction(structure.space_bits()) / Fraction(1024)
    assert report.params["m"] == int(bits.sum())
    assert not report.substituted
    seq = StructureFactory.create("sequence", np.arange(1, 301) % 7 + 1, delta=4)
    assert audit_structure(seq).substituted
    assert audit_structure(seq).lower_ratio is None
    print("measured 模式测试完成\n")


def test_stream_reports():
    print("=== 测试流结构的审计 ===")
    sketch = SsaSketch(8, 2, 4)
    report = audit_structure(sketch)
    assert report.kind == "sketch"
    assert report.notes["nu"] == 1 and report.notes["z"] == 1
    exact = audit_structure(IntStreamExact(1000, 7))
    assert exact.kind == "int-stream"
    assert 0 < exact.notes["directory_ratio"] < 1
    approx = audit_structure(BinaryStreamApprox(1 << 12, 16))
    assert approx.kind == "bit-stream-approx" and approx.lower_formula_bits == 256
    print("流结构审计测试完成\n")


def main():
    """运行所有测试"""
    print("开始测试空间审计...\n")
    test_lower_bounds()
    test_formula_mode()
    test_measured_mode()
    test_stream_reports()
    print("所有测试完成！")


if __name__ == "__main__":
    main()
