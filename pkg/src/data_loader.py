# -*- coding: utf-8 -*-
"""
数据加载模块，用于读取位串、稀疏位置、多重集、序列、流与查询脚本文件，并提供对应的写出函数
"""
import os
import struct
from typing import List, NamedTuple, Optional, Tuple

import numpy as np

from .errors import ValidationError
from .utils import as_bit_array

RAW_SUFFIXES = (".bin", ".raw")


class QueryLine(NamedTuple):
    """查询脚本中的一行"""
    line_no: int
    op: str
    args: Tuple[int, ...]


class StreamQuery(NamedTuple):
    """流模拟脚本中的一行：在第 t 次推入之后执行，t 为 None 时在全部推入之后执行"""
    line_no: int
    t: Optional[int]
    op: str
    i: int


def _check_exists(path: str) -> None:
    if not os.path.isfile(path):
        raise FileNotFoundError(f"输入文件不存在: {path}")


def _content_lines(path: str) -> List[Tuple[int, str]]:
    """去掉注释与空行后的 (行号, 内容)"""
    _check_exists(path)
    lines = []
    with open(path, "r", encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            text = line.split("#", 1)[0].strip()
            if text:
                lines.append((line_no, text))
    return lines


def _parse_int(text: str, path: str, line_no: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise ValidationError(f"{path} 第 {line_no} 行不是整数: {text}")


def load_bits(path: str) -> np.ndarray:
    """
    读取位串文件

    .bin / .raw：8 字节小端位长 + 小端位序打包字节；其他：文本，每行 0/1 或一行 01 串

    Returns:
        uint8 的 0/1 数组

    Raises:
        FileNotFoundError: 文件不存在
        ValidationError: 内容不合法
    """
    _check_exists(path)
    if path.lower().endswith(RAW_SUFFIXES):
        with open(path, "rb") as f:
            raw = f.read()
        if len(raw) < 8:
            if not raw:
                return np.zeros(0, dtype=np.uint8)
            raise ValidationError(f"{path} 缺少 8 字节长度头")
        (n,) = struct.unpack("<Q", raw[:8])
        payload = np.frombuffer(raw[8:], dtype=np.uint8)
        if payload.size * 8 < n:
            raise ValidationError(f"{path} 的数据不足 {n} 位")
        return np.unpackbits(payload, bitorder="little")[:n].astype(np.uint8)
    text = "".join(line for _, line in _content_lines(path))
    try:
        return as_bit_array(text)
    except ValueError:
        raise ValidationError(f"{path} 只能包含 0 和 1")


def save_bits(path: str, bits: np.ndarray) -> None:
    """按扩展名写出原始或文本位串文件"""
    arr = as_bit_array(bits)
    ensure_parent(path)
    if path.lower().endswith(RAW_SUFFIXES):
        with open(path, "wb") as f:
            f.write(struct.pack("<Q", arr.size))
            f.write(np.packbits(arr, bitorder="little").tobytes())
    else:
        with open(path, "w", encoding="utf-8") as f:
            f.write("".join("1" if b else "0" for b in arr) + "\n")


def load_positions(path: str) -> np.ndarray:
    """
    读取稀疏位置文件（递增整数，首行可选 "n=..."），返回位串

    Raises:
        ValidationError: 位置未严格递增或越界
    """
    lines = _content_lines(path)
    n: Optional[int] = None
    if lines and lines[0][1].lower().startswith("n="):
        n = _parse_int(lines[0][1][2:].strip(), path, lines[0][0])
        lines = lines[1:]
    positions = [_parse_int(tok, path, line_no) for line_no, text in lines for tok in text.split()]
    if any(b <= a for a, b in zip(positions, positions[1:])):
        raise ValidationError(f"{path} 的位置必须严格递增")
    if n is None:
        n = positions[-1] if positions else 0
    if positions and (positions[0] < 1 or positions[-1] > n):
        raise ValidationError(f"{path} 的位置必须位于 [1, {n}] 内")
    bits = np.zeros(n, dtype=np.uint8)
    if positions:
        bits[np.asarray(positions, dtype=np.int64) - 1] = 1
    return bits


def load_multiset(path: str) -> np.ndarray:
    """
    读取多重集文件（每行 "element count"，首行可选 "n=..."），返回频率数组

    Raises:
        ValidationError: 元素或次数不合法
    """
    lines = _content_lines(path)
    n: Optional[int] = None
    if lines and lines[0][1].lower().startswith("n="):
        n = _parse_int(lines[0][1][2:].strip(), path, lines[0][0])
        lines = lines[1:]
    pairs = []
    for line_no, text in lines:
        parts = text.split()
        if len(parts) != 2:
            raise ValidationError(f"{path} 第 {line_no} 行应为 \"element count\"")
        element, count = (_parse_int(p, path, line_no) for p in parts)
        if element < 1 or count < 0:
            raise ValidationError(f"{path} 第 {line_no} 行的元素或次数不合法")
        pairs.append((element, count))
    if n is None:
        n = max((e for e, _ in pairs), default=0)
    freqs = np.zeros(n, dtype=np.int64)
    for element, count in pairs:
        if element > n:
            raise ValidationError(f"元素 {element} 超出全集大小 {n}")
        freqs[element - 1] += count
    return freqs


def save_multiset(path: str, freqs: np.ndarray) -> None:
    """写出多重集文件"""
    ensure_parent(path)
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"n={len(freqs)}\n")
        for element, count in enumerate(freqs, start=1):
            if count:
                f.write(f"{element} {int(count)}\n")


def load_sequence(path: str, as_bytes: bool = False) -> Tuple[np.ndarray, int]:
    """
    读取序列文件

    Args:
        path: 文件路径
        as_bytes: 为真时按字节读取，字节 v 对应符号 v+1，σ = 256；否则每行一个整数

    Returns:
        (符号数组, 建议的字母表大小)
    """
    if as_bytes:
        _check_exists(path)
        with open(path, "rb") as f:
            raw = f.read()
        return np.frombuffer(raw, dtype=np.uint8).astype(np.int64) + 1, 256
    symbols = np.asarray([_parse_int(tok, path, line_no)
                          for line_no, text in _content_lines(path) for tok in text.split()], dtype=np.int64)
    sigma = int(symbols.max()) if symbols.size else 1
    return symbols, sigma


def save_sequence(path: str, symbols: np.ndarray) -> None:
    """写出每行一个整数的序列文件"""
    ensure_parent(path)
    with open(path, "w", encoding="utf-8") as f:
        f.write("\n".join(str(int(s)) for s in symbols) + "\n")


def load_stream(path: str) -> np.ndarray:
    """读取流文件（每行一个或多个非负整数），.bin / .raw 按打包位串读取"""
    if path.lower().endswith(RAW_SUFFIXES):
        return load_bits(path).astype(np.int64)
    values = [_parse_int(tok, path, line_no) for line_no, text in _content_lines(path) for tok in text.split()]
    if any(v < 0 for v in values):
        raise ValidationError(f"{path} 的流元素必须非负")
    return np.asarray(values, dtype=np.int64)


save_stream = save_sequence


def load_query_script(path: str) -> List[QueryLine]:
    """
    读取查询脚本，每行 "op arg [arg]"，# 开始注释

    Raises:
        ValidationError: 参数不是整数
    """
    queries = []
    for line_no, text in _content_lines(path):
        parts = text.split()
        args = tuple(_parse_int(p, path, line_no) for p in parts[1:])
        queries.append(QueryLine(line_no, parts[0].lower(), args))
    return queries


def load_stream_script(path: str) -> List[StreamQuery]:
    """
    读取流模拟脚本，每行 "@t op i"（第 t 次推入之后）或 "op i"（全部推入之后），按执行顺序返回

    Raises:
        ValidationError: 格式不合法或 t < 1
    """
    queries = []
    for line_no, text in _content_lines(path):
        parts = text.split()
        t = None
        if parts[0].startswith("@"):
            t = _parse_int(parts[0][1:], path, line_no)
            if t < 1:
                raise ValidationError(f"{path} 第 {line_no} 行: 推入次数必须至少为 1: {t}")
            parts = parts[1:]
        if len(parts) != 2:
            raise ValidationError(f"{path} 第 {line_no} 行应为 \"@t op i\" 或 \"op i\"")
        queries.append(StreamQuery(line_no, t, parts[0].lower(), _parse_int(parts[1], path, line_no)))
    return sorted(queries, key=script_order)


def script_order(q: StreamQuery) -> Tuple[bool, int, int]:
    """脚本执行顺序：按 t 递增，t 为 None 的排在最后，同一时刻按行号"""
    return q.t is None, q.t or 0, q.line_no


def ensure_parent(path: str) -> None:
    """确保输出文件的父目录存在"""
    folder = os.path.dirname(path)
    if folder:
        os.makedirs(folder, exist_ok=True)
