# -*- coding: utf-8 -*-
"""
配置文件，用于设置数据目录、结构几何参数、序列化格式和命令行退出码等配置
"""
import os
from pathlib import Path
from dotenv import load_dotenv

load_dotenv() # 加载 .env 文件中的环境变量

# 项目根目录
BASE_DIR = Path(__file__).resolve().parent.parent

# 数据目录
DATA_DIR = os.path.join(BASE_DIR, "data")
INPUT_DIR = os.path.join(DATA_DIR, "input")
OUTPUT_DIR = os.getenv("APPROXRS_OUTPUT_DIR", os.path.join(DATA_DIR, "output"))

# 并行与随机种子
APPROXRS_THREADS = max(1, int(os.getenv("APPROXRS_THREADS", "4")))  # bench 并行上限
DEFAULT_SEED = int(os.getenv("APPROXRS_SEED", "20240601"))

# 位向量几何
WORD_BITS = 64
SUPERBLOCK_WORDS = 8  # 512 位一个超级块
SUPERBLOCK_BITS = WORD_BITS * SUPERBLOCK_WORDS
REL_FIELD_BITS = 9  # 超级块内相对计数字段宽度
SELECT_SAMPLE_RATE = 8192  # 每 8192 个 1（或 0）采样一次

# 部分和几何
PSUM_BLOCK = 64
PSUM_SUPERBLOCK = 1024

# 稀疏模式判定：m/δ ≤ (n/δ)/8
SPARSE_DENSITY_RATIO = 8

# 流结构几何
STREAM_SUB_BITS = 128  # 子块的目标载荷位数
STREAM_SUBS_PER_BLOCK = 4  # 每块至少包含的子块数

# 序列化格式
FORMAT_MAGIC = b"ARSX"
FORMAT_VERSION = 1

# 命令行退出码
EXIT_OK = 0
EXIT_IO = 1
EXIT_VALIDATION = 2
EXIT_QUERY = 3
EXIT_VERIFY = 4

# 默认输出文件
DEFAULT_BENCH_FILE = os.path.join(OUTPUT_DIR, "bench.csv")
DEFAULT_AUDIT_FILE = os.path.join(OUTPUT_DIR, "audit.csv")
