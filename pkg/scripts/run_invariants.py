#!/usr/bin/env python3
"""执行不变量自检（梯度、任务布局、初始化、基线、持久化与可复现性）。"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from minigate.common import get_logger, output_dir
from minigate.harness import run_invariant_suite

LOGGER = get_logger("scripts.invariants")


def _parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(description="Run invariant self-checks")
    parser.add_argument("--seed", type=int, default=0, help="自检使用的种子")
    parser.add_argument("--workdir", default=None, help="临时文件目录，默认 $MINIGATE_OUTPUT_DIR/invariants")
    return parser.parse_args()


def main() -> int:
    args = _parse_args()
    workdir = Path(args.workdir) if args.workdir else output_dir("invariants")
    results = run_invariant_suite(args.seed, workdir)
    for result in results:
        print(f"[{'PASS' if result.passed else 'FAIL'}] {result.name}: {result.detail}")
    failed = [result.name for result in results if not result.passed]
    if failed:
        LOGGER.error("不变量自检失败", extra={"failed": failed})
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
