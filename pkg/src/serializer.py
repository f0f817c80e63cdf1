# -*- coding: utf-8 -*-
"""
结构序列化模块

文件格式（小端）：
    magic(4B) | version(u16) | kind 名长度(u16) | kind 名 | 字段数(u16) | 字段...
字段：名称长度(u16) | 名称 | 类型标签(u8) | 载荷
    标签 1：整数，i64
    标签 2：numpy 数组，dtype 码(u8) + 元素个数(u64) + 原始字节
    标签 3：嵌套结构，递归写入 kind 名与字段表（不含 magic 与版本）
"""
import io
import struct
from typing import BinaryIO

import numpy as np

from config.config import FORMAT_MAGIC, FORMAT_VERSION
from .data_loader import ensure_parent
from .errors import FormatError, ParameterError
from .structures.base_structure import BaseStructure
from .structures.factory import structure_class

TAG_INT = 1
TAG_ARRAY = 2
TAG_STRUCT = 3

DTYPE_CODES = {
    np.dtype(np.uint8): 1,
    np.dtype(np.uint16): 2,
    np.dtype(np.uint32): 3,
    np.dtype(np.uint64): 4,
    np.dtype(np.int64): 5,
}
CODE_DTYPES = {code: dtype for dtype, code in DTYPE_CODES.items()}


def _write_str(out: BinaryIO, text: str) -> None:
    raw = text.encode("utf-8")
    out.write(struct.pack("<H", len(raw)))
    out.write(raw)


def _read_exact(src: BinaryIO, size: int) -> bytes:
    raw = src.read(size)
    if len(raw) != size:
        raise FormatError("文件被截断")
    return raw


def _read_str(src: BinaryIO) -> str:
    (length,) = struct.unpack("<H", _read_exact(src, 2))
    return _read_exact(src, length).decode("utf-8")


def _write_structure(out: BinaryIO, structure: BaseStructure) -> None:
    _write_str(out, structure.kind)
    state = structure.to_state()
    out.write(struct.pack("<H", len(state)))
    for name, value in state.items():
        _write_str(out, name)
        if isinstance(value, BaseStructure):
            out.write(struct.pack("<B", TAG_STRUCT))
            _write_structure(out, value)
        elif isinstance(value, np.ndarray):
            dtype = value.dtype.newbyteorder("=")
            if dtype not in DTYPE_CODES:
                raise FormatError(f"不支持的数组类型: {value.dtype}")
            out.write(struct.pack("<BBQ", TAG_ARRAY, DTYPE_CODES[dtype], value.size))
            out.write(np.ascontiguousarray(value, dtype=dtype.newbyteorder("<")).tobytes())
        elif isinstance(value, (int, np.integer)):
            out.write(struct.pack("<Bq", TAG_INT, int(value)))
        else:
            raise FormatError(f"字段 {name} 的类型无法序列化: {type(value).__name__}")


def _read_structure(src: BinaryIO) -> BaseStructure:
    kind = _read_str(src)
    try:
        cls = structure_class(kind)
    except ParameterError:
        raise FormatError(f"未知的结构类型: {kind}")
    (count,) = struct.unpack("<H", _read_exact(src, 2))
    state = {}
    for _ in range(count):
        name = _read_str(src)
        (tag,) = struct.unpack("<B", _read_exact(src, 1))
        if tag == TAG_INT:
            (state[name],) = struct.unpack("<q", _read_exact(src, 8))
        elif tag == TAG_ARRAY:
            code, size = struct.unpack("<BQ", _read_exact(src, 9))
            if code not in CODE_DTYPES:
                raise FormatError(f"未知的数组类型码: {code}")
            dtype = CODE_DTYPES[code]
            raw = _read_exact(src, size * dtype.itemsize)
            state[name] = np.frombuffer(raw, dtype=dtype.newbyteorder("<")).astype(dtype)
        elif tag == TAG_STRUCT:
            state[name] = _read_structure(src)
        else:
            raise FormatError(f"未知的字段标签: {tag}")
    return cls.from_state(state)


def dumps(structure: BaseStructure) -> bytes:
    """序列化为字节串"""
    out = io.BytesIO()
    out.write(FORMAT_MAGIC)
    out.write(struct.pack("<H", FORMAT_VERSION))
    _write_structure(out, structure)
    return out.getvalue()


def loads(data: bytes) -> BaseStructure:
    """
    由字节串恢复结构

    Raises:
        FormatError: magic、版本或内容不合法
    """
    src = io.BytesIO(data)
    if src.read(len(FORMAT_MAGIC)) != FORMAT_MAGIC:
        raise FormatError("文件头不匹配，不是结构文件")
    (version,) = struct.unpack("<H", _read_exact(src, 2))
    if version != FORMAT_VERSION:
        raise FormatError(f"不支持的格式版本: {version}（当前 {FORMAT_VERSION}）")
    structure = _read_structure(src)
    if src.read(1):
        raise FormatError("文件末尾有多余数据")
    return structure


def save(path: str, structure: BaseStructure) -> None:
    """
    保存结构到文件

    Args:
        path: 输出路径
        structure: 结构
    """
    ensure_parent(path)
    with open(path, "wb") as f:
        f.write(dumps(structure))


def load(path: str) -> BaseStructure:
    """
    从文件加载结构

    Raises:
        FormatError: 文件内容不合法
    """
    with open(path, "rb") as f:
        return loads(f.read())
