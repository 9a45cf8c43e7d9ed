"""训练配置与实验参数默认值。"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional

from minigate.common import ConfigurationError
from minigate.mgu import InitKind, InitSpec
from minigate.tasks import MaskMode, TaskName, sequence_length

DEFAULT_CLIP_NORM = 1.0


class OptimizerName(str, Enum):
    ADAM = "adam"
    SGD = "sgd"


class BandMode(str, Enum):
    """变化带：各种子的最小/最大值，或均值 ± 总体标准差。"""

    MINMAX = "minmax"
    STD = "std"


@dataclass(frozen=True)
class TaskDefaults:
    """各任务的默认迭代数、批大小、隐藏维度与学习率。"""

    iterations: int
    batch_size: int
    hidden_size: int
    learning_rate: float


TASK_DEFAULTS: Dict[TaskName, TaskDefaults] = {
    TaskName.ADDING: TaskDefaults(iterations=5000, batch_size=50, hidden_size=128, learning_rate=0.001),
    TaskName.COPY: TaskDefaults(iterations=5000, batch_size=128, hidden_size=128, learning_rate=0.001),
}


@dataclass(frozen=True)
class TrainConfig:
    """单次训练的完整配置，构造时校验。"""

    task: TaskName
    size: int
    init: InitSpec
    iterations: int = 5000
    batch_size: int = 50
    hidden_size: int = 128
    learning_rate: float = 0.001
    clip_norm: Optional[float] = DEFAULT_CLIP_NORM
    seed: int = 0
    log_every: int = 1
    optimizer: OptimizerName = OptimizerName.ADAM
    mask_mode: MaskMode = MaskMode.HALVES
    progress_every: int = 500
    band: BandMode = BandMode.MINMAX

    def __post_init__(self) -> None:
        object.__setattr__(self, "task", TaskName.parse(self.task))
        try:
            object.__setattr__(self, "optimizer", OptimizerName(self.optimizer))
            object.__setattr__(self, "mask_mode", MaskMode(self.mask_mode))
            object.__setattr__(self, "band", BandMode(self.band))
        except ValueError as exc:
            raise ConfigurationError(str(exc)) from exc
        minimum_size = 2 if self.task is TaskName.ADDING else 1
        checks = [
            (self.size >= minimum_size, f"size 必须 ≥ {minimum_size}"),
            (self.iterations >= 1, "iterations 必须 ≥ 1"),
            (self.batch_size >= 1, "batch_size 必须 ≥ 1"),
            (self.hidden_size >= 1, "hidden_size 必须 ≥ 1"),
            (self.learning_rate > 0, "learning_rate 必须为正"),
            (self.clip_norm is None or self.clip_norm > 0, "clip_norm 必须为正或关闭"),
            (0 <= self.seed < 2**64, "seed 必须是 64 位无符号整数"),
            (self.log_every >= 1, "log_every 必须 ≥ 1"),
            (self.progress_every >= 1, "progress_every 必须 ≥ 1"),
        ]
        errors = [message for ok, message in checks if not ok]
        if errors:
            raise ConfigurationError("训练配置无效：" + "；".join(errors))

    @classmethod
    def for_task(
        cls,
        task: TaskName | str,
        size: int,
        init: InitKind | str = InitKind.CHRONO_POSITIVE,
        *,
        iterations: Optional[int] = None,
        batch_size: Optional[int] = None,
        hidden_size: Optional[int] = None,
        learning_rate: Optional[float] = None,
        **fields: Any,
    ) -> TrainConfig:
        """按任务默认值构造配置；t_max 取任务的序列总长度。"""

        name = TaskName.parse(task)
        defaults = TASK_DEFAULTS[name]
        try:
            spec = InitSpec.for_sequence(init, sequence_length(name, size))
        except ValueError as exc:
            raise ConfigurationError(f"未知初始化方式：{init!r}") from exc
        return cls(
            task=name,
            size=size,
            init=spec,
            iterations=iterations if iterations is not None else defaults.iterations,
            batch_size=batch_size if batch_size is not None else defaults.batch_size,
            hidden_size=hidden_size if hidden_size is not None else defaults.hidden_size,
            learning_rate=learning_rate if learning_rate is not None else defaults.learning_rate,
            **fields,
        )

    def replace(self, **changes: Any) -> TrainConfig:
        return dataclasses.replace(self, **changes)

    def with_seed(self, seed: int) -> TrainConfig:
        return self.replace(seed=seed)

    @property
    def figure(self) -> str:
        return f"{self.task.value}-{self.size}"

    @property
    def run_name(self) -> str:
        return f"{self.figure}-{self.init.kind.value}-seed{self.seed}"


__all__ = [
    "DEFAULT_CLIP_NORM",
    "OptimizerName",
    "BandMode",
    "TaskDefaults",
    "TASK_DEFAULTS",
    "TrainConfig",
]
