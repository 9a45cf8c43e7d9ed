"""无记忆基线损失的闭式解与经验测量。"""

from __future__ import annotations

import math

import numpy as np

from minigate.autodiff.losses import mse_loss
from minigate.common import ArgumentError
from minigate.tensor import RngState

from .adding import gen_adding
from .models import COPY_RECALL, TaskName


def baseline_loss(task: TaskName | str, t_or_length: int) -> float:
    """adding：最优常数预测 1.0 对两个 U(0,1) 之和的 MSE，即 1/6。
    copy：正确预测所有占位 0、对 10 个回忆位置在 8 个符号上均匀猜测，
    平均交叉熵为 10·ln 8 / (T + 20)。"""

    name = TaskName.parse(task)
    if t_or_length < 1:
        raise ArgumentError(f"任务规模必须为正，当前为 {t_or_length}")
    if name is TaskName.ADDING:
        return 1.0 / 6.0
    return COPY_RECALL * math.log(8.0) / (t_or_length + 2 * COPY_RECALL)


def empirical_constant_mse(
    n_samples: int, rng: RngState, *, length: int = 50, chunk: int = 10_000
) -> float:
    """在 n_samples 个生成样本上测量常数预测 1.0 的 MSE。"""

    if n_samples < 1:
        raise ArgumentError(f"样本数必须为正，当前为 {n_samples}")
    total = 0.0
    remaining = n_samples
    while remaining > 0:
        size = min(chunk, remaining)
        batch = gen_adding(length, size, rng)
        loss, _ = mse_loss(np.ones_like(batch.targets), batch.targets)
        total += loss * size
        remaining -= size
    return total / n_samples


__all__ = ["baseline_loss", "empirical_constant_mse"]
