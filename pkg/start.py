#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
快速启动脚本
从根目录运行命令行工具，参数原样转发，例如：
    python start.py audit --kind drank-select --n 1000000 --delta 64
"""

import subprocess
import sys
from pathlib import Path

def main():
    """启动命令行工具"""
    script_path = Path(__file__).parent / "scripts" / "run_cli.py"

    if not script_path.exists():
        print("❌ 错误: 找不到启动脚本", file=sys.stderr)
        return 1

    return subprocess.run([sys.executable, str(script_path), *sys.argv[1:]]).returncode

if __name__ == "__main__":
    sys.exit(main())
