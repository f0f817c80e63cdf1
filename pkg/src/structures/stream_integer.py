# -*- coding: utf-8 -*-
"""
整数流（取值 0..ℓ）上的滑动窗口后缀和

IntStreamExact：精确 ss，环形数组每个元素占 ⌈lg(ℓ+1)⌉ 位
SsaSketch：加性误差 δ 的 ssA 草图。元素先舍入到 ℓ/2^b 网格累加进余量 r，
每 ν 个元素为一个块，块结束时把 r 中整份的 δ̃ 以计数 ρ 推入内部精确结构 A。
所有量以 1/2^(b+1) 为单位的整数表示，查询结果为精确有理数。
"""
import math
from fractions import Fraction
from typing import Any, Dict, List, NamedTuple

from ..errors import RangeError, NotFoundError, ParameterError, ValidationError
from .base_structure import SCALAR_BITS
from .stream_base import FramedWindow


class Estimate(NamedTuple):
    """估计值 num / den"""
    num: int
    den: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.num, self.den)

    def ceil(self) -> int:
        """向上取整"""
        return -(-self.num // self.den)

    def __float__(self) -> float:
        return self.num / self.den


class IntStreamExact(FramedWindow):
    """
    精确整数滑动窗口
    """

    def push(self, x: int) -> None:
        """
        推入一个元素

        Raises:
            ValidationError: x 不在 0..ℓ
        """
        if x < 0 or x > self.ell:
            raise ValidationError(f"元素 {x} 超出取值范围 0..{self.ell}")
        self._append(int(x))

    def payload_bits(self) -> int:
        """环形数组载荷位数 n·⌈lg(ℓ+1)⌉"""
        return self.n * self.alpha

    def directory_bits(self) -> int:
        """目录位数（不含环形数组）"""
        return self.sub_counts.space_bits() + self.block_counts.space_bits()


def _reduced(value: int, n: int, divisor: int = 1) -> int:
    """⌊value·(1 - 1/lg n)/divisor⌋；n 为 2 的幂时按整数精确计算"""
    if n & (n - 1) == 0:
        lg = n.bit_length() - 1
        return value * (lg - 1) // (lg * divisor)
    return math.floor(value * (1 - 1 / math.log2(n)) / divisor)


def _rounding_bits(n: int, ell: int, delta: int) -> int:
    """最小的 b ≥ 0 使 2^b ≥ nℓ·lg n / δ"""
    b = 0
    if n & (n - 1) == 0:
        bound = n * ell * (n.bit_length() - 1)
        while (delta << b) < bound:
            b += 1
    else:
        bound = n * ell * math.log2(n) / delta
        while (1 << b) < bound:
            b += 1
    return b


def sketch_parameters(n: int, ell: int, delta: int) -> Dict[str, int]:
    """
    计算草图参数 ν、δ̃、b、s、z

    Raises:
        ParameterError: n < 2、ℓ < 1 或 δ 不在 1..ℓn
    """
    if n < 2:
        raise ParameterError(f"窗口容量必须至少为 2: {n}")
    if ell < 1:
        raise ParameterError(f"取值上界必须至少为 1: {ell}")
    if delta < 1 or delta > ell * n:
        raise ParameterError(f"δ 必须在 1..{ell * n} 之间: {delta}")
    nu = max(_reduced(delta, n, ell), 1)
    reduced = _reduced(delta, n)
    b = _rounding_bits(n, ell, delta)
    unit = 1 << (b + 1)
    big_d = max(reduced, 1) * unit
    z = (big_d - 1 + nu * ell * unit) // big_d
    return {"nu": nu, "reduced_delta": reduced, "b": b, "s": -(-n // nu) + 1, "z": z}


class SsaSketch:
    """
    加性误差 δ 的整数流后缀和草图

    δ̃ ≤ 1 时直接使用容量 n 的精确结构。
    """

    def __init__(self, n: int, ell: int, delta: int):
        params = sketch_parameters(n, ell, delta)
        self.n = int(n)
        self.ell = int(ell)
        self.delta = int(delta)
        self.nu = params["nu"]
        self.reduced_delta = params["reduced_delta"]
        self.b = params["b"]
        self.capacity = params["s"]
        self.z = params["z"]
        self.exact = self.reduced_delta <= 1
        self.den = 1 if self.exact else 1 << (self.b + 1)
        self.half = self.den // 2
        self.big_d = self.reduced_delta * self.den
        self.big_l = self.ell * self.den
        if self.exact:
            self.inner = IntStreamExact(self.n, self.ell)
        else:
            self.inner = IntStreamExact(self.capacity, self.z)
        self.r = 0
        self.o = 0
        self.seen = 0

    @property
    def window(self) -> int:
        return min(self.n, self.seen)

    def parameters(self) -> Dict[str, Any]:
        """派生参数，用于日志与审计"""
        return {"n": self.n, "ell": self.ell, "delta": self.delta, "nu": self.nu,
                "reduced_delta": self.reduced_delta, "b": self.b, "s": self.capacity,
                "z": self.z, "exact": self.exact}

    def round_units(self, x: int) -> int:
        """Round_b(x) 以 1/2^(b+1) 为单位"""
        return 2 * self.ell * ((x << self.b) // self.ell)

    def add(self, x: int) -> None:
        """
        推入一个元素

        Raises:
            ValidationError: x 不在 0..ℓ
        """
        if x < 0 or x > self.ell:
            raise ValidationError(f"元素 {x} 超出取值范围 0..{self.ell}")
        x = int(x)
        self.seen += 1
        if self.exact:
            self.inner.push(x)
            return
        self.r += self.round_units(x)
        self.o += 1
        if self.o == self.nu:
            rho = (self.r + self.half) // self.big_d
            self.r -= rho * self.big_d
            self.inner.push(rho)
            self.o = 0

    def query(self, i: int) -> Estimate:
        """
        最近 i 个元素之和的估计 Ŝ，满足 S - δ < Ŝ ≤ S

        Raises:
            RangeError: i 不在 1..min(n, 已到达元素数)
        """
        if self.exact:
            return Estimate(self.inner.ss(i), 1)
        if i < 1 or i > self.window:
            raise RangeError(f"后缀长度越界: {i}（窗口长度 {self.window}）")
        base = self.r - (self.big_d - self.half)
        if i <= self.o:
            return Estimate(max(base - self.big_l * (self.o - i), -self.half), self.den)
        span = i - self.o
        count = -(-span // self.nu)
        total = self.inner.ss(count)
        oldest = total - (self.inner.ss(count - 1) if count > 1 else 0)
        out = (self.nu - span % self.nu) % self.nu
        return Estimate(base + self.big_d * total - self.big_l * oldest * out, self.den)

    def iss_a(self, i: int) -> int:
        """
        二分查找 ⌈Ŝ(j)⌉ 越过 i - δ + 1 的相邻位置，满足 iss(i - δ - ℓ + 1) < r ≤ iss(i)；
        查询需要 O(lg n) 次 query

        Raises:
            NotFoundError: i < 1 或窗口估计总和不足
        """
        if i < 1:
            raise NotFoundError(f"名次必须至少为 1: {i}")
        hi = self.window
        if hi == 0:
            raise NotFoundError("窗口为空")
        if i < self.delta:
            # 下界为 iss(≤0) = 0，每个元素至多为 ℓ
            return min(-(-i // self.ell), hi)
        target = i - self.delta + 1
        if self.query(hi).ceil() < target:
            raise NotFoundError(f"窗口估计总和不足 {i}")
        lo = 0
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.query(mid).ceil() >= target:
                hi = mid
            else:
                lo = mid
        return hi

    def inner_values(self) -> List[int]:
        """内部精确结构窗口中的值，最旧在前"""
        return self.inner.window_values()

    def space_bits(self) -> int:
        return self.inner.space_bits() + 8 * SCALAR_BITS
