"""命令行入口。"""

from .app import build_parser, main

__all__ = ["build_parser", "main"]
