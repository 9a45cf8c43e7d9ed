#!/usr/bin/env python3
"""运行完整对比网格（4 张图 × 初始化方式 × 种子），结果写入输出目录。"""

from __future__ import annotations

import argparse
import sys
from typing import List

from minigate.cli import main as cli_main


def _parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(description="Reproduce all convergence figures")
    parser.add_argument("--fast", action="store_true", help="仅 adding-50 的缩小版本")
    parser.add_argument("--threads", type=int, default=None, help="并行训练数")
    parser.add_argument("--out", default=None, help="输出目录")
    return parser.parse_args()


def main() -> int:
    args = _parse_args()
    argv: List[str] = ["reproduce", "--html", "--strict"]
    if args.fast:
        argv.append("--fast")
    if args.threads is not None:
        argv += ["--threads", str(args.threads)]
    if args.out:
        argv += ["--out", args.out]
    return cli_main(argv)


if __name__ == "__main__":
    sys.exit(main())
