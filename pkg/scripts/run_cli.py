#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
命令行启动脚本
在子进程中运行 src.cli，并在中断时终止子进程（长时间的 bench 与 stream-sim 使用）
"""

import subprocess
import sys
import signal
import atexit
from pathlib import Path

# 全局变量用于存储子进程
cli_process = None


def cleanup_processes():
    """终止仍在运行的子进程"""
    global cli_process

    if cli_process and cli_process.poll() is None:
        try:
            cli_process.terminate()
            print("⏳ 等待进程结束...", file=sys.stderr)
            try:
                cli_process.wait(timeout=3)
                print("✅ 进程已正常结束", file=sys.stderr)
            except subprocess.TimeoutExpired:
                print("⚠️ 进程未在3秒内结束，强制终止...", file=sys.stderr)
                cli_process.kill()
                cli_process.wait()
        except Exception as e:
            print(f"❌ 关闭过程中出现错误: {e}", file=sys.stderr)


def signal_handler(signum, frame):
    """信号处理函数"""
    print("\n🛑 接收到中断信号，正在停止...", file=sys.stderr)
    cleanup_processes()
    sys.exit(130)


def main(argv=None):
    """
    运行命令行工具

    Args:
        argv: 传给 src.cli 的参数，默认取 sys.argv[1:]

    Returns:
        子进程退出码
    """
    global cli_process

    signal.signal(signal.SIGINT, signal_handler)
    if hasattr(signal, 'SIGTERM'):
        signal.signal(signal.SIGTERM, signal_handler)
    atexit.register(cleanup_processes)

    root_dir = Path(__file__).parent.parent
    if not (root_dir / "src" / "cli.py").exists():
        print("❌ 错误: 找不到 src/cli.py", file=sys.stderr)
        return 1

    args = sys.argv[1:] if argv is None else list(argv)
    try:
        cli_process = subprocess.Popen([sys.executable, "-m", "src.cli", *args], cwd=str(root_dir))
        return cli_process.wait()
    except KeyboardInterrupt:
        signal_handler(signal.SIGINT, None)
    except Exception as e:
        print(f"❌ 启动失败: {str(e)}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
