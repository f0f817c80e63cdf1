# -*- coding: utf-8 -*-
"""
异常定义模块

所有异常同时继承对应的内建异常，调用方既可以按本模块的类别捕获，
也可以按 IndexError / LookupError / ValueError 捕获。
"""


class ApproxRSError(Exception):
    """工具包异常基类"""


class RangeError(ApproxRSError, IndexError):
    """位置、下标或窗口长度越界"""


class NotFoundError(ApproxRSError, LookupError):
    """select / search / iss 的目标不存在（例如名次超过 1 的个数）"""


class ValidationError(ApproxRSError, ValueError):
    """输入数据不合法（未排序位置、超出字母表的符号、超出位宽的值等）"""


class ParameterError(ApproxRSError, ValueError):
    """结构参数不合法（δ、n、ℓ 等）"""


class FormatError(ApproxRSError, ValueError):
    """序列化文件格式错误"""
