"""环境配置加载测试。"""

from __future__ import annotations

from pathlib import Path

import pytest

from minigate.config import get_settings


def test_threads_and_output_dir_from_env(isolated_output_dir: Path) -> None:
    settings = get_settings()
    assert settings.runtime.threads == 1
    assert settings.runtime.resolve_output_dir() == isolated_output_dir.resolve()
    assert isolated_output_dir.is_dir()


def test_settings_are_cached() -> None:
    assert get_settings() is get_settings()


def test_invalid_thread_count_falls_back(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("MINIGATE_THREADS", "many")
    get_settings.cache_clear()
    assert get_settings().runtime.threads >= 1
    monkeypatch.setenv("MINIGATE_THREADS", "0")
    get_settings.cache_clear()
    assert get_settings().runtime.threads == 1


def test_logging_settings(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> None:
    monkeypatch.setenv("LOG_LEVEL", "debug")
    monkeypatch.setenv("LOG_JSON", "yes")
    monkeypatch.setenv("LOG_DIR", str(tmp_path / "logs"))
    get_settings.cache_clear()
    logging_settings = get_settings().logging
    assert logging_settings.level == "DEBUG"
    assert logging_settings.json_enabled is True
    assert logging_settings.log_dir == (tmp_path / "logs").resolve()
