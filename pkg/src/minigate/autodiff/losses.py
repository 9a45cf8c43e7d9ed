"""损失函数：均方误差与逐位置 softmax 交叉熵，均按元素个数取平均。"""

from __future__ import annotations

from enum import Enum
from typing import List, Sequence, Tuple

import numpy as np
import numpy.typing as npt

from minigate.common import ArgumentError, ShapeError
from minigate.tensor import Matrix


class LossKind(str, Enum):
    MSE = "mse"
    SOFTMAX_XENT = "xent"


def mse_loss(pred: Matrix, target: Matrix) -> Tuple[float, Matrix]:
    """loss = Σ(pred-target)²/(O·B)，d_pred = 2(pred-target)/(O·B)。"""

    if pred.shape != target.shape:
        raise ShapeError(f"MSE 形状不一致：pred {pred.shape} vs target {target.shape}")
    diff = pred - target
    count = diff.size
    loss = float(np.sum(diff * diff) / count)
    return loss, (2.0 / count) * diff


def softmax_xent_loss(
    logits: Sequence[Matrix], targets: npt.NDArray[np.int64]
) -> Tuple[float, List[Matrix]]:
    """所有 T·B 个位置上 -ln softmax(logits)[target] 的平均。

    logits[t] 为 O×B，targets 为 T×B 的类别下标矩阵。"""

    targets = np.asarray(targets, dtype=np.int64)
    if targets.ndim != 2 or targets.shape[0] != len(logits):
        raise ShapeError(f"目标形状 {targets.shape} 与 logits 长度 {len(logits)} 不符")
    if len(logits) == 0:
        raise ArgumentError("logits 序列为空")
    stacked = np.stack(logits)  # T×O×B
    steps, classes, batch = stacked.shape
    if targets.shape[1] != batch:
        raise ShapeError(f"目标批大小 {targets.shape[1]} 与 logits 批大小 {batch} 不符")
    if np.any(targets < 0) or np.any(targets >= classes):
        raise ArgumentError(f"类别下标越界：应位于 [0, {classes})")

    shifted = stacked - stacked.max(axis=1, keepdims=True)
    log_norm = np.log(np.exp(shifted).sum(axis=1, keepdims=True))
    log_probs = shifted - log_norm
    t_idx, b_idx = np.meshgrid(np.arange(steps), np.arange(batch), indexing="ij")
    picked = log_probs[t_idx, targets, b_idx]
    count = steps * batch
    loss = float(-picked.sum() / count)

    grad = np.exp(log_probs)
    grad[t_idx, targets, b_idx] -= 1.0
    grad /= count
    return loss, list(grad)


__all__ = ["LossKind", "mse_loss", "softmax_xent_loss"]
