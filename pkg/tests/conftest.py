"""测试层公共夹具定义。"""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Callable, Iterator

import pytest

# 将 src 目录加入 sys.path，确保测试可直接导入包
_PROJECT_ROOT = Path(__file__).resolve().parents[1]
_SRC_PATH = _PROJECT_ROOT / "src"

if str(_SRC_PATH) not in sys.path:
    sys.path.insert(0, str(_SRC_PATH))

from minigate.config import get_settings
from minigate.mgu import InitKind, InitSpec, Model, init_model
from minigate.tasks import Batch, gen_adding, gen_copy
from minigate.tensor import RngState


@pytest.fixture(autouse=True)
def isolated_output_dir(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Iterator[Path]:
    """所有输出写入临时目录，并在前后清空配置缓存。"""

    target = tmp_path / "outputs"
    monkeypatch.setenv("MINIGATE_OUTPUT_DIR", str(target))
    monkeypatch.setenv("MINIGATE_THREADS", "1")
    get_settings.cache_clear()
    yield target
    get_settings.cache_clear()


@pytest.fixture
def rng() -> RngState:
    return RngState(1234)


@pytest.fixture
def small_model() -> Callable[..., Model]:
    """按维度与初始化方式构造小模型。"""

    def factory(
        hidden: int = 4,
        input_size: int = 2,
        output_size: int = 1,
        kind: InitKind = InitKind.CHRONO_POSITIVE,
        t_max: int = 10,
        seed: int = 7,
    ) -> Model:
        return init_model(hidden, input_size, output_size, InitSpec(kind, t_max), RngState(seed))

    return factory


@pytest.fixture
def adding_batch() -> Batch:
    return gen_adding(10, 4, RngState(11))


@pytest.fixture
def copy_batch() -> Batch:
    return gen_copy(5, 3, RngState(13))
