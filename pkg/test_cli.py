#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
命令行的端到端测试
每个子命令在临时目录中运行，检查退出码与 CSV 输出
"""

import os
import tempfile

import pandas as pd

from config.config import EXIT_OK, EXIT_IO, EXIT_VALIDATION, EXIT_QUERY, EXIT_VERIFY
from src import data_loader
from src.cli import main
from src.query_runner import QUERY_COLUMNS


def _write(folder, name, text):
    path = os.path.join(folder, name)
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
    return path


def test_build_query_verify():
    print("=== 测试 build 与 query --verify ===")
    with tempfile.TemporaryDirectory() as folder:
        bits = _write(folder, "bits.txt", "1011001110110100\n")
        structure = os.path.join(folder, "bits.arsx")
        audit = os.path.join(folder, "audit.csv")
        code = main(["--quiet", "build", "--kind", "drank-select", "--input", bits, "--out", structure,
                     "--delta", "2", "--audit-out", audit])
        assert code == EXIT_OK
        assert pd.read_csv(audit)["kind"].tolist() == ["drank-select"]
        script = _write(folder, "q.txt", "# 注释行\ndranka 5\nselecta 2\ndranka 16\n")
        out = os.path.join(folder, "answers.csv")
        code = main(["--quiet", "query", "--structure", structure, "--script", script, "--out", out,
                     "--verify", "--source", bits])
        assert code == EXIT_OK
        frame = pd.read_csv(out)
        assert frame["op"].tolist() == ["dranka", "selecta", "dranka"]
        assert frame["line"].tolist() == [2, 3, 4]
        assert frame["in_interval"].all()
    print("build 与 query 测试完成\n")


def test_verify_failure():
    print("=== 测试校验失败的退出码 ===")
    with tempfile.TemporaryDirectory() as folder:
        ones = _write(folder, "ones.txt", "1111111111\n")
        zeros = _write(folder, "zeros.txt", "0000000000\n")
        structure = os.path.join(folder, "ones.arsx")
        assert main(["--quiet", "build", "--kind", "drank-select", "--input", ones, "--out", structure,
                     "--delta", "2"]) == EXIT_OK
        script = _write(folder, "q.txt", "dranka 10\n")
        code = main(["--quiet", "query", "--structure", structure, "--script", script,
                     "--out", os.path.join(folder, "a.csv"), "--verify", "--source", zeros])
        assert code == EXIT_VERIFY
    print("校验失败测试完成\n")


def test_query_errors_and_empty_script():
    print("=== 测试查询错误与空脚本 ===")
    with tempfile.TemporaryDirectory() as folder:
        bits = _write(folder, "bits.txt", "10110\n")
        structure = os.path.join(folder, "plain.arsx")
        assert main(["--quiet", "build", "--kind", "plain", "--input", bits, "--out", structure]) == EXIT_OK
        empty = _write(folder, "empty.txt", "# 没有查询\n")
        out = os.path.join(folder, "empty.csv")
        assert main(["--quiet", "query", "--structure", structure, "--script", empty, "--out", out]) == EXIT_OK
        with open(out, encoding="utf-8") as f:
            assert f.read().strip() == ",".join(QUERY_COLUMNS)
        bad = _write(folder, "bad.txt", "select1 4\n")
        out = os.path.join(folder, "bad.csv")
        assert main(["--quiet", "query", "--structure", structure, "--script", bad, "--out", out]) == EXIT_QUERY
        assert main(["--quiet", "query", "--structure", structure, "--script", bad, "--out", out,
                     "--lenient"]) == EXIT_OK
        assert pd.read_csv(out)["error"].notna().all()
        wrong_op = _write(folder, "wrong.txt", "dranka 2\n")
        assert main(["--quiet", "query", "--structure", structure, "--script", wrong_op,
                     "--out", out]) == EXIT_VALIDATION
    print("查询错误测试完成\n")


def test_input_errors():
    print("=== 测试输入错误 ===")
    with tempfile.TemporaryDirectory() as folder:
        positions = _write(folder, "pos.txt", "n=20\n3\n9\n7\n")
        out = os.path.join(folder, "s.arsx")
        assert main(["--quiet", "build", "--kind", "sparse", "--input", positions, "--out", out]) == EXIT_VALIDATION
        missing = os.path.join(folder, "missing.txt")
        assert main(["--quiet", "build", "--kind", "plain", "--input", missing, "--out", out]) == EXIT_IO
        bits = _write(folder, "bits.txt", "1012\n")
        assert main(["--quiet", "build", "--kind", "plain", "--input", bits, "--out", out]) == EXIT_VALIDATION
        good = _write(folder, "good.txt", "1010\n")
        assert main(["--quiet", "build", "--kind", "drank-select", "--input", good, "--out", out,
                     "--delta", "9"]) == EXIT_VALIDATION
        garbage = _write(folder, "garbage.arsx", "not a structure")
        script = _write(folder, "q.txt", "rank1 1\n")
        assert main(["--quiet", "query", "--structure", garbage, "--script", script]) == EXIT_VALIDATION
    print("输入错误测试完成\n")


def test_audit_command():
    print("=== 测试 audit 子命令 ===")
    with tempfile.TemporaryDirectory() as folder:
        out = os.path.join(folder, "audit.csv")
        assert main(["--quiet", "audit", "--kind", "drank-select", "--n", "1000000", "--delta", "64",
                     "--out", out]) == EXIT_OK
        row = pd.read_csv(out).iloc[0]
        assert row["upper_formula_bits"] == 15625 and row["lower_formula_bits"] == 15625
        assert main(["--quiet", "audit", "--kind", "sketch", "--measure", "--n", "8", "--ell", "2",
                     "--delta", "4", "--out", out]) == EXIT_OK
        row = pd.read_csv(out).iloc[0]
        assert row["note_nu"] == 1 and row["note_s"] == 9
        assert main(["--quiet", "audit", "--out", out]) == EXIT_VALIDATION
    print("audit 子命令测试完成\n")


def test_stream_sim_command():
    print("=== 测试 stream-sim 子命令 ===")
    with tempfile.TemporaryDirectory() as folder:
        stream = _write(folder, "stream.txt", "1\n0\n1\n1\n0\n")
        script = _write(folder, "script.txt", "@5 ss 3\n@5 iss 2\n")
        out = os.path.join(folder, "sim.csv")
        assert main(["--quiet", "stream-sim", "--kind", "bit", "--input", stream, "--n", "5",
                     "--script", script, "--verify", "--out", out]) == EXIT_OK
        frame = pd.read_csv(out)
        assert frame["estimate_num"].tolist() == [2, 3]
        assert frame["in_envelope"].all()

        values = _write(folder, "ints.txt", "2 1 2\n")
        script = _write(folder, "sketch.txt", "@3 ssa 3\n@3 ssa 2\n")
        assert main(["--quiet", "stream-sim", "--kind", "int", "--input", values, "--n", "8", "--ell", "2",
                     "--delta", "4", "--script", script, "--verify", "--out", out]) == EXIT_OK
        frame = pd.read_csv(out)
        assert frame["estimate_num"].tolist() == [112, 48]
        assert frame["estimate_den"].tolist() == [32, 32]
        assert frame["true_sum"].tolist() == [5, 3]

        every = os.path.join(folder, "every.csv")
        assert main(["--quiet", "stream-sim", "--kind", "bit", "--input", stream, "--n", "3", "--delta", "2",
                     "--every", "--verify", "--out", every]) == EXIT_OK
        frame = pd.read_csv(every)
        assert set(frame["op"]) == {"ssa", "issa"}
        assert frame["in_envelope"].dropna().all()

        bad = _write(folder, "bad.txt", "@1 iss 1\n")
        assert main(["--quiet", "stream-sim", "--kind", "int", "--input", values, "--n", "4", "--ell", "2",
                     "--script", bad]) == EXIT_VALIDATION
    print("stream-sim 子命令测试完成\n")


def test_stream_sim_script_positions():
    print("=== 测试 stream-sim 脚本的推入次数 ===")
    with tempfile.TemporaryDirectory() as folder:
        stream = _write(folder, "stream.txt", "1\n0\n1\n")
        out = os.path.join(folder, "sim.csv")
        args = ["--quiet", "stream-sim", "--kind", "bit", "--input", stream, "--n", "4", "--out", out]
        zero = _write(folder, "zero.txt", "@0 ss 1\n@2 ss 1\n")
        assert main(args + ["--script", zero]) == EXIT_VALIDATION
        late = _write(folder, "late.txt", "@2 ss 1\n@9 ss 1\n")
        assert main(args + ["--script", late]) == EXIT_VALIDATION
        # 不带 @t 的行在全部推入之后执行
        tail = _write(folder, "tail.txt", "ss 3\n@2 ss 1\n")
        assert main(args + ["--script", tail, "--verify"]) == EXIT_OK
        frame = pd.read_csv(out)
        assert frame["t"].tolist() == [2, 3]
        assert frame["estimate_num"].tolist() == [0, 2]
        assert frame["in_envelope"].all()

        packed = os.path.join(folder, "stream.bin")
        data_loader.save_bits(packed, [1, 0, 1])
        assert main(["--quiet", "stream-sim", "--kind", "bit", "--input", packed, "--n", "4",
                     "--script", tail, "--out", out]) == EXIT_OK
        assert pd.read_csv(out)["estimate_num"].tolist() == [0, 2]
    print("脚本推入次数测试完成\n")


def test_bench_command():
    print("=== 测试 bench 子命令 ===")
    with tempfile.TemporaryDirectory() as folder:
        out = os.path.join(folder, "bench.csv")
        assert main(["--quiet", "bench", "--kind", "drank-select", "sketch", "--n", "2000", "--delta", "8",
                     "--ell", "3", "--queries", "20", "--threads", "2", "--repeat", "2", "--out", out]) == EXIT_OK
        frame = pd.read_csv(out)
        assert frame["kind"].tolist() == ["drank-select", "drank-select", "sketch"]
        assert frame["op"].tolist() == ["dranka", "selecta", "ssa"]
        assert (frame["queries"] == 20).all() and (frame["samples"] == 40).all()
        assert frame["push_p50_us"].notna().tolist() == [False, False, True]
        assert main(["--quiet", "bench", "--kind", "sketch", "--n", "500", "2000", "--delta", "8", "--ell", "3",
                     "--queries", "10", "--repeat", "1", "--flatness", "500", "2000", "--out", out]) == EXIT_OK
        assert sorted(pd.read_csv(out)["n"].tolist()) == [500, 2000]
    print("bench 子命令测试完成\n")


def main_tests():
    """运行所有测试"""
    print("开始测试命令行...\n")
    test_build_query_verify()
    test_verify_failure()
    test_query_errors_and_empty_script()
    test_input_errors()
    test_audit_command()
    test_stream_sim_command()
    test_stream_sim_script_positions()
    test_bench_command()
    print("所有测试完成！")


if __name__ == "__main__":
    main_tests()
