# -*- coding: utf-8 -*-
"""
工具函数模块，提供位运算、numpy 打包和一些通用的辅助功能
"""
from typing import Sequence, Union

import numpy as np

from .errors import ValidationError

# SWAR popcount 常量
M1 = np.uint64(0x5555555555555555)
M2 = np.uint64(0x3333333333333333)
M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
H01 = np.uint64(0x0101010101010101)
ALL_ONES = np.uint64(0xFFFFFFFFFFFFFFFF)
WORD_MASK = (1 << 64) - 1

# 每个字节的 1 的个数
BYTE_POPCOUNT = [bin(b).count("1") for b in range(256)]

BitsLike = Union[str, bytes, Sequence[int], np.ndarray]


def popcount64(arr: np.ndarray) -> np.ndarray:
    """
    对 uint64 数组逐元素计算 1 的个数（SWAR，无需硬件 popcount）

    Args:
        arr: uint64 数组

    Returns:
        与输入同形状的 uint64 计数数组
    """
    arr = np.asarray(arr, dtype=np.uint64)
    arr = arr - ((arr >> np.uint64(1)) & M1)
    arr = (arr & M2) + ((arr >> np.uint64(2)) & M2)
    arr = (arr + (arr >> np.uint64(4))) & M4
    arr = arr * H01
    return arr >> np.uint64(56)


def popcount(word: int) -> int:
    """单个 Python 整数的 1 的个数"""
    return bin(word).count("1")


def select_in_word(word: int, k: int) -> int:
    """
    返回字内第 k 个 1 的位下标（从低位起，k 从 1 开始，结果从 0 开始）

    Args:
        word: 64 位整数
        k: 名次，需满足 1 ≤ k ≤ popcount(word)

    Returns:
        位下标 0..63
    """
    base = 0
    while True:
        byte = word & 0xFF
        cnt = BYTE_POPCOUNT[byte]
        if k <= cnt:
            break
        k -= cnt
        word >>= 8
        base += 8
    while True:
        if byte & 1:
            k -= 1
            if k == 0:
                return base
        byte >>= 1
        base += 1


def select_from_high(word: int, k: int, width: int = 64) -> int:
    """
    返回从最高位数起第 k 个 1 的位下标（结果仍按低位为 0 编号）

    Args:
        word: 整数
        k: 名次，从 1 开始
        width: 参与计数的位宽
    """
    total = popcount(word & ((1 << width) - 1))
    return select_in_word(word, total - k + 1)


def ceil_log2(x: int) -> int:
    """⌈lg x⌉，x ≤ 1 时为 0"""
    x = int(x)
    if x <= 1:
        return 0
    return (x - 1).bit_length()


def floor_log2(x: int) -> int:
    """⌊lg x⌋，要求 x ≥ 1"""
    return int(x).bit_length() - 1


def bits_needed(max_value: int) -> int:
    """存放 0..max_value 所需的位数，至少 1 位"""
    return max(1, int(max_value).bit_length())


def as_bit_array(bits: BitsLike) -> np.ndarray:
    """
    把多种位串表示统一为 uint8 的 0/1 数组

    Args:
        bits: "0101" 字符串、0/1 序列或 numpy 数组

    Returns:
        uint8 数组

    Raises:
        ValidationError: 出现 0/1 以外的值
    """
    if isinstance(bits, (str, bytes)):
        text = bits.decode("ascii") if isinstance(bits, bytes) else bits
        text = "".join(text.split())
        arr = np.frombuffer(text.encode("ascii"), dtype=np.uint8) - ord("0") if text else np.zeros(0, dtype=np.uint8)
    else:
        arr = np.asarray(bits)
        if arr.size == 0:
            return np.zeros(0, dtype=np.uint8)
        try:
            arr = arr.astype(np.int64, copy=False).ravel()
        except (TypeError, ValueError):
            raise ValidationError("位串只能包含 0 和 1")
    if arr.size and (arr.min() < 0 or arr.max() > 1):
        raise ValidationError("位串只能包含 0 和 1")
    return arr.astype(np.uint8)


def pack_bits(bits: np.ndarray) -> np.ndarray:
    """
    把 0/1 数组打包为小端位序的 uint64 字数组（第 i 位存放在第 i//64 个字的第 i%64 位）

    Args:
        bits: uint8 的 0/1 数组

    Returns:
        uint64 字数组，长度 ⌈n/64⌉
    """
    n = int(bits.size)
    nwords = (n + 63) // 64
    if nwords == 0:
        return np.zeros(0, dtype=np.uint64)
    packed = np.packbits(bits.astype(np.uint8), bitorder="little")
    buf = np.zeros(nwords * 8, dtype=np.uint8)
    buf[:packed.size] = packed
    return buf.view("<u8").astype(np.uint64)


def unpack_bits(words: np.ndarray, n: int) -> np.ndarray:
    """pack_bits 的逆操作，返回长度为 n 的 uint8 数组"""
    if n == 0:
        return np.zeros(0, dtype=np.uint8)
    raw = np.asarray(words, dtype="<u8").view(np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n]


def low_mask(bits: int) -> int:
    """低 bits 位全为 1 的掩码"""
    return (1 << bits) - 1
