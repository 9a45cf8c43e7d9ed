"""公共工具模块导出。"""

from .exceptions import (
    ArgumentError,
    ConfigurationError,
    ExperimentError,
    MinigateError,
    NumericError,
    ParseError,
    PersistenceError,
    ShapeError,
)
from .logging import ExtraFormatter, JsonFormatter, build_logging_config, get_logger, setup_logging
from .paths import ensure_parent, output_dir, project_root

__all__ = [
    "MinigateError",
    "ConfigurationError",
    "ArgumentError",
    "ShapeError",
    "NumericError",
    "ParseError",
    "PersistenceError",
    "ExperimentError",
    "setup_logging",
    "get_logger",
    "build_logging_config",
    "JsonFormatter",
    "ExtraFormatter",
    "project_root",
    "output_dir",
    "ensure_parent",
]
