# -*- coding: utf-8 -*-
"""
静态结构基类
定义空间统计、序列化状态导出与恢复的通用接口
"""

from abc import ABC, abstractmethod
from typing import Any, Dict

import numpy as np

# 结构中每个标量字段按一个机器字计
SCALAR_BITS = 64


class BaseStructure(ABC):
    """
    静态结构基类
    所有可构建、可序列化的结构都继承此类
    """

    # 序列化时使用的类型名，子类覆盖
    kind: str = ""

    @abstractmethod
    def space_bits(self) -> int:
        """
        结构占用的总位数（包含目录与标量字段）

        Returns:
            位数
        """
        pass

    @abstractmethod
    def to_state(self) -> Dict[str, Any]:
        """
        导出可序列化的状态：值为 int、numpy 数组或嵌套的 BaseStructure

        Returns:
            字段字典
        """
        pass

    @classmethod
    @abstractmethod
    def from_state(cls, state: Dict[str, Any]) -> "BaseStructure":
        """
        由 to_state 的结果恢复结构

        Args:
            state: 字段字典

        Returns:
            结构实例
        """
        pass

    def describe(self) -> Dict[str, Any]:
        """
        结构的参数摘要，用于日志与空间审计
        """
        info = {"kind": self.kind, "space_bits": self.space_bits()}
        for key, value in self.to_state().items():
            if isinstance(value, (int, np.integer)):
                info[key] = int(value)
        return info


def array_bits(arr: np.ndarray) -> int:
    """numpy 数组占用的位数"""
    return int(arr.nbytes) * 8
