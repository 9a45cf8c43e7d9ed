"""合成基准任务的数据结构。"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import List, Tuple

import numpy as np
import numpy.typing as npt

from minigate.autodiff.losses import LossKind
from minigate.common import ConfigurationError, ShapeError
from minigate.tensor import Matrix

COPY_SYMBOLS = 10
COPY_RECALL = 10
COPY_SIGNAL = 9
COPY_DUMMY = 0


class TaskName(str, Enum):
    ADDING = "adding"
    COPY = "copy"

    @classmethod
    def parse(cls, value: str | TaskName) -> TaskName:
        try:
            return cls(value)
        except ValueError as exc:
            raise ConfigurationError(f"未知任务：{value!r}，可选 adding / copy") from exc


class MaskMode(str, Enum):
    """加法任务标记位置的抽样方式。"""

    HALVES = "halves"
    UNIFORM = "uniform"


def task_dims(task: TaskName | str) -> Tuple[int, int]:
    """返回 (输入维度 D, 输出维度 O)。"""

    if TaskName.parse(task) is TaskName.ADDING:
        return 2, 1
    return COPY_SYMBOLS, COPY_SYMBOLS


def sequence_length(task: TaskName | str, size: int) -> int:
    """加法任务的 size 即序列长度；复制任务为 T + 20。"""

    if TaskName.parse(task) is TaskName.ADDING:
        return int(size)
    return int(size) + 2 * COPY_RECALL


def loss_kind_for(task: TaskName | str) -> LossKind:
    return LossKind.MSE if TaskName.parse(task) is TaskName.ADDING else LossKind.SOFTMAX_XENT


@dataclass(frozen=True)
class BatchMeta:
    """seed 是生成该批次的数据流种子；同一流上的第几个批次由 index 区分。"""

    task: TaskName
    size: int
    seed: int
    index: int = 0


@dataclass
class Batch:
    """一组任务样本：xs 为 T 个 D×B 输入矩阵。

    MSE 的 targets 为 1×B 实矩阵；SoftmaxXent 的 targets 为 T×B 类别下标。"""

    xs: List[Matrix]
    loss: LossKind
    targets: npt.NDArray[np.float64] | npt.NDArray[np.int64]
    meta: BatchMeta

    def __post_init__(self) -> None:
        if not self.xs:
            raise ShapeError("批次输入序列为空")
        first = self.xs[0].shape
        if any(x.shape != first for x in self.xs):
            raise ShapeError("批次各时间步输入形状不一致")
        if self.loss is LossKind.MSE and self.targets.shape != (1, first[1]):
            raise ShapeError(f"MSE 目标形状应为 {(1, first[1])}，实际为 {self.targets.shape}")
        if self.loss is LossKind.SOFTMAX_XENT and self.targets.shape != (len(self.xs), first[1]):
            raise ShapeError(
                f"交叉熵目标形状应为 {(len(self.xs), first[1])}，实际为 {self.targets.shape}"
            )

    @property
    def steps(self) -> int:
        return len(self.xs)

    @property
    def batch_size(self) -> int:
        return int(self.xs[0].shape[1])

    @property
    def input_size(self) -> int:
        return int(self.xs[0].shape[0])

    def inputs_array(self) -> npt.NDArray[np.float64]:
        """T×D×B 数组视图。"""

        return np.stack(self.xs)


__all__ = [
    "COPY_SYMBOLS",
    "COPY_RECALL",
    "COPY_SIGNAL",
    "COPY_DUMMY",
    "TaskName",
    "MaskMode",
    "BatchMeta",
    "Batch",
    "task_dims",
    "sequence_length",
    "loss_kind_for",
]
