"""配置模块导出。"""

from .settings import AppSettings, LoggingSettings, RuntimeSettings, get_settings

__all__ = ["AppSettings", "LoggingSettings", "RuntimeSettings", "get_settings"]
