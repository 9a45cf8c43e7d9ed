"""加法任务生成器。

每个样本两行：第一行为 U(0,1) 实数，第二行为恰含两个 1 的掩码；
目标是两个被标记实数之和。默认一个标记位于前半段、另一个位于后半段。"""

from __future__ import annotations

import numpy as np
import numpy.typing as npt

from minigate.autodiff.losses import LossKind
from minigate.common import ArgumentError
from minigate.tensor import RngState, uniform

from .models import Batch, BatchMeta, MaskMode, TaskName


def adding_mask(length: int, batch: int, rng: RngState, mode: MaskMode | str) -> npt.NDArray[np.float64]:
    """返回 B×length 的掩码矩阵，每行恰有两个 1。"""

    mask = np.zeros((batch, length), dtype=np.float64)
    rows = np.arange(batch)
    if MaskMode(mode) is MaskMode.HALVES:
        half = length // 2
        first = rng.integers(0, half, batch)
        second = rng.integers(half, length, batch)
    else:
        order = np.argsort(rng.random((batch, length)), axis=1)
        first, second = order[:, 0], order[:, 1]
    mask[rows, first] = 1.0
    mask[rows, second] = 1.0
    return mask


def batch_from_arrays(
    values: npt.NDArray[np.float64],
    mask: npt.NDArray[np.float64],
    *,
    seed: int,
    index: int = 0,
) -> Batch:
    """由 B×T 的数值与掩码构造批次。"""

    length = values.shape[1]
    stacked = np.stack([values.T, mask.T], axis=1)  # T×2×B
    targets = np.sum(values * mask, axis=1).reshape(1, -1)
    return Batch(
        xs=[np.ascontiguousarray(step) for step in stacked],
        loss=LossKind.MSE,
        targets=targets,
        meta=BatchMeta(task=TaskName.ADDING, size=length, seed=seed, index=index),
    )


def gen_adding(
    length: int, batch: int, rng: RngState, *, mask_mode: MaskMode | str = MaskMode.HALVES,
    index: int = 0,
) -> Batch:
    if length < 2:
        raise ArgumentError(f"加法任务长度必须 ≥ 2，当前为 {length}")
    if batch < 1:
        raise ArgumentError(f"批大小必须 ≥ 1，当前为 {batch}")
    values = uniform(rng, 0.0, 1.0, batch, length)
    mask = adding_mask(length, batch, rng, mask_mode)
    return batch_from_arrays(values, mask, seed=rng.seed, index=index)


__all__ = ["gen_adding", "adding_mask", "batch_from_arrays"]
