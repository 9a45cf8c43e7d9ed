"""复制任务生成器。

总长 T+20：10 个 {1..8} 随机符号、T-1 个占位 0、信号 9、10 个占位 0；
目标为 T+10 个占位 0 后接开头的 10 个符号。输入按 10 类 one-hot 编码。"""

from __future__ import annotations

import numpy as np
import numpy.typing as npt

from minigate.autodiff.losses import LossKind
from minigate.common import ArgumentError
from minigate.tensor import RngState

from .models import (
    COPY_DUMMY,
    COPY_RECALL,
    COPY_SIGNAL,
    COPY_SYMBOLS,
    Batch,
    BatchMeta,
    TaskName,
)


def copy_streams(
    symbols: npt.NDArray[np.int64], t_param: int
) -> tuple[npt.NDArray[np.int64], npt.NDArray[np.int64]]:
    """由 B×10 的待记忆符号构造 (输入, 目标) 符号流，形状均为 B×(T+20)。"""

    batch = symbols.shape[0]
    length = t_param + 2 * COPY_RECALL
    inputs = np.full((batch, length), COPY_DUMMY, dtype=np.int64)
    inputs[:, :COPY_RECALL] = symbols
    inputs[:, t_param + COPY_RECALL - 1] = COPY_SIGNAL
    targets = np.full((batch, length), COPY_DUMMY, dtype=np.int64)
    targets[:, length - COPY_RECALL :] = symbols
    return inputs, targets


def batch_from_streams(
    inputs: npt.NDArray[np.int64], targets: npt.NDArray[np.int64], *,
    t_param: int,
    seed: int,
    index: int = 0,
) -> Batch:
    eye = np.eye(COPY_SYMBOLS, dtype=np.float64)
    xs = [np.ascontiguousarray(eye[:, inputs[:, t]]) for t in range(inputs.shape[1])]
    return Batch(
        xs=xs,
        loss=LossKind.SOFTMAX_XENT,
        targets=np.ascontiguousarray(targets.T),
        meta=BatchMeta(task=TaskName.COPY, size=t_param, seed=seed, index=index),
    )


def gen_copy(t_param: int, batch: int, rng: RngState, *, index: int = 0) -> Batch:
    if t_param < 1:
        raise ArgumentError(f"复制任务 T 必须 ≥ 1，当前为 {t_param}")
    if batch < 1:
        raise ArgumentError(f"批大小必须 ≥ 1，当前为 {batch}")
    symbols = rng.integers(1, COPY_SIGNAL, (batch, COPY_RECALL))
    inputs, targets = copy_streams(symbols, t_param)
    return batch_from_streams(inputs, targets, t_param=t_param, seed=rng.seed, index=index)


__all__ = ["gen_copy", "copy_streams", "batch_from_streams"]
