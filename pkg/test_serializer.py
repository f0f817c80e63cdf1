#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
结构序列化的测试
保存再加载后查询答案必须完全一致；损坏的文件抛出 FormatError
"""

import os
import struct
import tempfile

import numpy as np
import pytest

from config.config import FORMAT_MAGIC, FORMAT_VERSION
from src import serializer
from src.errors import FormatError, NotFoundError, RangeError
from src.structures import (PackedIntArray, PartialSums, SeqRankSelect, StructureFactory)


def _answers(structure, checks):
    """对每个探测参数调用查询，异常记为异常类型名"""
    out = []
    for name, args in checks:
        try:
            out.append(getattr(structure, name)(*args))
        except (RangeError, NotFoundError) as e:
            out.append(type(e).__name__)
    return out


def _cases():
    rng = np.random.default_rng(71)
    bits = (rng.random(3000) < 0.3).astype(np.uint8)
    freqs = rng.integers(0, 5, size=400)
    bounded = rng.integers(0, 3, size=400)
    symbols = rng.integers(1, 27, size=900)
    positions = range(0, 3001, 37)
    elements = range(1, 401, 7)
    yield StructureFactory.create("plain", bits), [("rank1", (i,)) for i in positions] + \
        [("select0", (k,)) for k in range(1, 2200, 53)]
    yield StructureFactory.create("sparse", bits), [("rank1", (i,)) for i in positions] + \
        [("select1", (k,)) for k in range(1, 950, 23)]
    yield StructureFactory.create("drank-select", bits, delta=8), \
        [("drank_a", (i,)) for i in range(1, 3001, 37)] + [("select_a", (k,)) for k in range(1, 950, 23)]
    yield StructureFactory.create("drank-select", bits, delta=64, sparse=True), \
        [("drank_a", (i,)) for i in range(1, 3001, 37)] + [("select_a", (k,)) for k in range(1, 950, 23)]
    yield StructureFactory.create("rank-dselect", bits, delta=8), \
        [("rank_a", (i,)) for i in range(1, 3001, 37)] + [("dselect_a", (k,)) for k in range(1, 950, 23)]
    yield StructureFactory.create("multiset", freqs, delta=4), \
        [("drank_a", (i,)) for i in elements] + [("select_a", (k,)) for k in range(1, 800, 17)]
    yield StructureFactory.create("multiset-rd", freqs, delta=4), \
        [("rank_a", (i,)) for i in elements] + [("dselect_a", (k,)) for k in range(1, 800, 17)]
    for delta in (2, 8):
        yield StructureFactory.create("bounded-freq", bounded, delta=delta, ell=2), \
            [("drank_a", (i,)) for i in elements] + [("select_a", (k,)) for k in range(1, 400, 11)]
    yield StructureFactory.create("sequence", symbols, delta=4, sigma=26), \
        [("drank_a", (j, i)) for j in (1, 5, 26) for i in range(1, 901, 29)] + \
        [("select_a", (j, k)) for j in (1, 5, 26) for k in range(1, 40, 3)]
    yield PackedIntArray.build(freqs, 3), [("get", (i,)) for i in range(0, 401, 9)]
    yield PartialSums.build(freqs, 3), [("sum", (i,)) for i in range(0, 401, 9)] + \
        [("search", (x,)) for x in range(0, 900, 31)]
    yield SeqRankSelect.build(symbols, 26), [("rank", (c, i)) for c in (0, 3, 26) for i in range(0, 901, 45)]


def test_roundtrip_answers():
    print("=== 测试保存后答案一致 ===")
    for structure, checks in _cases():
        restored = serializer.loads(serializer.dumps(structure))
        assert type(restored) is type(structure)
        assert restored.kind == structure.kind
        assert _answers(restored, checks) == _answers(structure, checks)
        assert restored.space_bits() == structure.space_bits()
    print("答案一致性测试完成\n")


def test_save_and_load_file():
    print("=== 测试文件读写 ===")
    structure = StructureFactory.create("drank-select", "1011001110", delta=2)
    with tempfile.TemporaryDirectory() as folder:
        path = os.path.join(folder, "nested", "bits.arsx")
        serializer.save(path, structure)
        with open(path, "rb") as f:
            assert f.read(len(FORMAT_MAGIC)) == FORMAT_MAGIC
        restored = serializer.load(path)
    assert [restored.drank_a(i) for i in range(1, 11)] == [structure.drank_a(i) for i in range(1, 11)]
    print("文件读写测试完成\n")


def test_corrupted_files():
    print("=== 测试损坏文件 ===")
    data = serializer.dumps(StructureFactory.create("plain", "10110"))
    with pytest.raises(FormatError):
        serializer.loads(b"XXXX" + data[4:])
    bad_version = data[:4] + struct.pack("<H", FORMAT_VERSION + 1) + data[6:]
    with pytest.raises(FormatError):
        serializer.loads(bad_version)
    for cut in (3, 6, len(data) // 2, len(data) - 1):
        with pytest.raises(FormatError):
            serializer.loads(data[:cut])
    with pytest.raises(FormatError):
        serializer.loads(data + b"\x00")
    unknown = FORMAT_MAGIC + struct.pack("<HH", FORMAT_VERSION, 4) + b"nope" + struct.pack("<H", 0)
    with pytest.raises(FormatError):
        serializer.loads(unknown)
    print("损坏文件测试完成\n")


def main():
    """运行所有测试"""
    print("开始测试序列化...\n")
    test_roundtrip_answers()
    test_save_and_load_file()
    test_corrupted_files()
    print("所有测试完成！")


if __name__ == "__main__":
    main()
