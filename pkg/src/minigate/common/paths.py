"""路径与目录相关的工具函数。"""

from __future__ import annotations

from pathlib import Path

from minigate.config import get_settings

_PROJECT_ROOT = Path(__file__).resolve().parents[3]


def project_root() -> Path:
    """返回项目根目录。"""

    return _PROJECT_ROOT


def output_dir(*extra: str, ensure_exists: bool = True) -> Path:
    """获取实验输出目录，可附加子路径。

    参数:
        *extra: 追加的子目录名称
        ensure_exists: 是否自动创建目录
    """

    base = get_settings().runtime.resolve_output_dir()
    target = base.joinpath(*extra) if extra else base
    if ensure_exists:
        target.mkdir(parents=True, exist_ok=True)
    return target


def ensure_parent(path: Path | str) -> Path:
    """确保文件所在目录存在，返回 Path 对象。"""

    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    return target


__all__ = ["project_root", "output_dir", "ensure_parent"]
