"""统一定义项目中的异常类型。"""

from __future__ import annotations

from pathlib import Path
from typing import Any, Dict, Optional


class MinigateError(Exception):
    """项目顶层异常，所有自定义异常均应继承自此类型。"""


class ConfigurationError(MinigateError):
    """训练配置或任务名称无效。"""


class ArgumentError(MinigateError, ValueError):
    """函数参数不满足前置条件（维度、区间、空序列等）。"""


class ShapeError(MinigateError):
    """矩阵维度不匹配。"""


class NumericError(MinigateError):
    """出现 NaN/Inf 等非有限数值。

    details 中保存诊断信息（迭代步、最近损失、裁剪统计等）。"""

    def __init__(self, message: str, *, details: Optional[Dict[str, Any]] = None) -> None:
        super().__init__(message)
        self.details: Dict[str, Any] = dict(details or {})


class ParseError(MinigateError):
    """文件格式错误，附带路径与 1 起始的行号。"""

    def __init__(self, message: str, *, path: Path | str | None = None, line: Optional[int] = None) -> None:
        self.reason = message
        self.path = str(path) if path is not None else None
        self.line = line
        location = self.path or "<stream>"
        if line is not None:
            location = f"{location}:{line}"
        super().__init__(f"{location}: {message}")


class PersistenceError(MinigateError):
    """文件读写失败，附带路径。"""

    def __init__(self, message: str, *, path: Path | str) -> None:
        super().__init__(f"{path}: {message}")
        self.path = str(path)


class ExperimentError(MinigateError):
    """多种子实验中单次训练失败，记录对应种子。"""

    def __init__(self, message: str, *, seed: int) -> None:
        super().__init__(f"seed={seed}: {message}")
        self.seed = seed


__all__ = [
    "MinigateError",
    "ConfigurationError",
    "ArgumentError",
    "ShapeError",
    "NumericError",
    "ParseError",
    "PersistenceError",
    "ExperimentError",
]
