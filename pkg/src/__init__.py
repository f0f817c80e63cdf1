# -*- coding: utf-8 -*-
"""
近似 rank/select 与滑动窗口后缀和工具包
"""

__version__ = '0.1.0'
