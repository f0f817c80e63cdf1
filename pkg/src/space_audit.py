# -*- coding: utf-8 -*-
"""
空间审计模块

formula 模式只根据参数计算上界与下界公式；measured 模式读取结构的实际位数并给出比值。
比值用 Fraction 精确计算，输出时转为浮点。
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Optional

from .errors import ParameterError
from .structures import (PlainBitVector, SparseBitVector, DRankSelectA, RankDSelectA, MultisetFixedM,
                         MultisetFixedMRD, MultisetBoundedFreq, SeqApprox, BinaryStreamExact,
                         BinaryStreamApprox, IntStreamExact, SsaSketch)
from .utils import bits_needed, ceil_log2

# 表示方式被替换的结构：下界不作断言，只作标记
SUBSTITUTED_KINDS = {"sparse", "multiset", "sequence"}

STREAM_KINDS = ("bit-stream", "bit-stream-approx", "int-stream", "sketch")


@dataclass
class SpaceAuditReport:
    """空间审计结果"""
    kind: str
    params: Dict[str, Any]
    upper_formula_bits: float
    lower_formula_bits: Optional[float] = None
    measured_bits: Optional[int] = None
    upper_ratio: Optional[Fraction] = None
    lower_ratio: Optional[Fraction] = None
    substituted: bool = False
    notes: Dict[str, Any] = field(default_factory=dict)

    def to_row(self) -> Dict[str, Any]:
        """扁平化为一行 CSV 记录"""
        row = {"kind": self.kind}
        for key in ("n", "m", "delta", "ell", "sigma"):
            row[key] = self.params.get(key)
        row.update({
            "measured_bits": self.measured_bits,
            "upper_formula_bits": round(self.upper_formula_bits, 3),
            "lower_formula_bits": None if self.lower_formula_bits is None else round(self.lower_formula_bits, 3),
            "upper_ratio": None if self.upper_ratio is None else round(float(self.upper_ratio), 6),
            "lower_ratio": None if self.lower_ratio is None else round(float(self.lower_ratio), 6),
            "substituted": self.substituted,
        })
        return row


def log2_binomial(n: int, m: int) -> float:
    """B(n, m) = lg C(n, m)"""
    if m < 0 or m > n:
        return 0.0
    return (math.lgamma(n + 1) - math.lgamma(m + 1) - math.lgamma(n - m + 1)) / math.log(2)


def drank_lower_bound(n: int, delta: int) -> int:
    """drankA 的空间下界 ⌊n/δ⌋"""
    return n // delta


def rank_lower_bound(n: int, delta: int) -> float:
    """rankA 的空间下界 ⌊n/2δ⌋·lg δ"""
    return (n // (2 * delta)) * math.log2(delta)


def bounded_freq_lower_bound(n: int, delta: int, ell: int) -> float:
    """频率不超过 ℓ 时的空间下界 ⌊n/⌈δ/ℓ⌉⌋·lg(max(⌊ℓ/δ⌋, 1) + 1)"""
    return (n // -(-delta // ell)) * math.log2(max(ell // delta, 1) + 1)


def sketch_formula(n: int, ell: int, delta: int) -> float:
    """草图空间公式 ⌊n/max(⌊µ⌋,1)⌋·lg(⌈µ⁻¹⌉+1) + ⌈lg n⌉，µ = δ/ℓ"""
    mu = Fraction(delta, ell)
    inv = math.ceil(1 / mu)
    return (n // max(math.floor(mu), 1)) * math.log2(inv + 1) + ceil_log2(n)


def _require(params: Dict[str, Any], *names: str) -> None:
    missing = [name for name in names if params.get(name) is None]
    if missing:
        raise ParameterError(f"缺少审计参数: {', '.join(missing)}")


def formulas(kind: str, params: Dict[str, Any]):
    """
    返回 (上界公式位数, 下界公式位数或 None)

    Raises:
        ParameterError: 未知类型或缺少参数
    """
    _require(params, "n")
    n = int(params["n"])
    if kind == "plain":
        return 1.25 * n, float(n)
    if kind == "sparse":
        _require(params, "m")
        m = int(params["m"])
        upper = 2 * m * (2 + ceil_log2(-(-n // m))) if m else 0.0
        return float(upper), log2_binomial(n, m)
    _require(params, "delta")
    delta = int(params["delta"])
    if kind == "drank-select":
        return float(-(-n // delta)), float(drank_lower_bound(n, delta))
    if kind == "rank-dselect":
        return float(-(-n // delta) * bits_needed(delta)), rank_lower_bound(n, delta)
    if kind == "multiset":
        _require(params, "m")
        m = int(params["m"])
        kept = m // delta
        return log2_binomial(n + kept, kept), float(drank_lower_bound(n, delta))
    if kind == "multiset-rd":
        _require(params, "m")
        m = int(params["m"])
        return float(2 * -(-(n + m) // delta) * bits_needed(delta)), rank_lower_bound(n, delta)
    if kind == "bounded-freq":
        _require(params, "m", "ell")
        ell = int(params["ell"])
        lower = bounded_freq_lower_bound(n, delta, ell)
        if delta <= ell:
            kept = int(params["m"]) // delta
            return log2_binomial(n + kept, kept), lower
        return float(-(-n // (delta // ell))), lower
    if kind == "sequence":
        _require(params, "sigma")
        return (2 * n / delta) * math.log2(int(params["sigma"]) + 1), None
    if kind == "bit-stream":
        return float(n), float(n)
    if kind == "bit-stream-approx":
        return float(-(-n // delta) + 64 * ceil_log2(n)), float(drank_lower_bound(n, delta))
    if kind == "int-stream":
        _require(params, "ell")
        return float(n * bits_needed(int(params["ell"]))), None
    if kind == "sketch":
        _require(params, "ell")
        ell = int(params["ell"])
        return sketch_formula(n, ell, delta), bounded_freq_lower_bound(n, delta, ell)
    raise ParameterError(f"不支持的审计类型: {kind}")


def _ratio(measured: int, formula: Optional[float]) -> Optional[Fraction]:
    if formula is None or formula <= 0:
        return None
    return Fraction(measured) / Fraction(formula)


def audit_formula(kind: str, **params: Any) -> SpaceAuditReport:
    """
    formula 模式：只计算公式

    Args:
        kind: 结构类型
        params: n、m、delta、ell、sigma 中该类型需要的参数
    """
    upper, lower = formulas(kind, params)
    return SpaceAuditReport(kind, dict(params), upper, lower, substituted=kind in SUBSTITUTED_KINDS)


def structure_params(structure: Any):
    """
    从结构实例提取 (类型, 参数)

    Raises:
        ParameterError: 不支持的结构
    """
    if isinstance(structure, PlainBitVector):
        return "plain", {"n": structure.n, "m": structure.ones}
    if isinstance(structure, SparseBitVector):
        return "sparse", {"n": structure.n, "m": structure.m}
    if isinstance(structure, DRankSelectA):
        return "drank-select", {"n": structure.n, "m": structure.m, "delta": structure.delta}
    if isinstance(structure, RankDSelectA):
        return "rank-dselect", {"n": structure.n, "m": structure.m, "delta": structure.delta}
    if isinstance(structure, MultisetFixedM):
        return "multiset", {"n": structure.n, "m": structure.m, "delta": structure.delta}
    if isinstance(structure, MultisetFixedMRD):
        return "multiset-rd", {"n": structure.n, "m": structure.m, "delta": structure.delta}
    if isinstance(structure, MultisetBoundedFreq):
        return "bounded-freq", {"n": structure.n, "m": structure.m, "delta": structure.delta,
                                "ell": structure.ell}
    if isinstance(structure, SeqApprox):
        return "sequence", {"n": structure.n, "delta": structure.delta, "sigma": structure.sigma}
    if isinstance(structure, BinaryStreamExact):
        return "bit-stream", {"n": structure.n}
    if isinstance(structure, BinaryStreamApprox):
        return "bit-stream-approx", {"n": structure.n, "delta": structure.delta}
    if isinstance(structure, SsaSketch):
        return "sketch", {"n": structure.n, "delta": structure.delta, "ell": structure.ell}
    if isinstance(structure, IntStreamExact):
        return "int-stream", {"n": structure.n, "ell": structure.ell}
    raise ParameterError(f"不支持审计的结构: {type(structure).__name__}")


def audit_structure(structure: Any) -> SpaceAuditReport:
    """
    measured 模式：实际位数与公式之比
    """
    kind, params = structure_params(structure)
    upper, lower = formulas(kind, params)
    measured = int(structure.space_bits())
    report = SpaceAuditReport(kind, params, upper, lower, measured,
                              _ratio(measured, upper), _ratio(measured, lower),
                              substituted=kind in SUBSTITUTED_KINDS)
    if isinstance(structure, SsaSketch):
        report.notes.update(structure.parameters())
    if isinstance(structure, IntStreamExact):
        report.notes["directory_ratio"] = float(Fraction(structure.directory_bits(), structure.payload_bits()))
    return report
