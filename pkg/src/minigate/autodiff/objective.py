"""模型在一个批次上的损失与梯度。

加法任务只监督最后一步（MSE），复制任务监督每一步（softmax 交叉熵）。"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Callable, List, Optional, Tuple

import numpy as np

from minigate.common import ArgumentError
from minigate.mgu import Model, StepCache, mgu_forward, readout_apply
from minigate.tensor import Matrix

from .backward import Gradients, final_step_only, mgu_backward
from .losses import LossKind, mse_loss, softmax_xent_loss

if TYPE_CHECKING:
    from minigate.tasks import Batch

BackwardFn = Callable[..., Gradients]


@dataclass
class ForwardTrace:
    """一次前向的全部产物，反向传播时复用。"""

    h0: Matrix
    hs: List[Matrix]
    caches: List[StepCache]
    d_outputs: List[Optional[Matrix]]


def forward_loss(model: Model, batch: Batch) -> Tuple[float, ForwardTrace]:
    """前向 + 读出 + 损失，返回标量损失与轨迹。"""

    hidden = model.cell.hidden_size
    h0 = np.zeros((hidden, batch.batch_size), dtype=np.float64)
    hs, caches = mgu_forward(model.cell, batch.xs, h0)
    loss_kind = LossKind(batch.loss)
    if loss_kind is LossKind.MSE:
        pred = readout_apply(model.readout, hs[-1])
        loss, d_pred = mse_loss(pred, batch.targets)
        d_outputs = final_step_only(d_pred, len(hs))
    elif loss_kind is LossKind.SOFTMAX_XENT:
        logits = [readout_apply(model.readout, h) for h in hs]
        loss, d_logits = softmax_xent_loss(logits, batch.targets)
        d_outputs = list(d_logits)
    else:  # pragma: no cover - 枚举已穷尽
        raise ArgumentError(f"不支持的损失类型：{loss_kind}")
    return loss, ForwardTrace(h0=h0, hs=hs, caches=caches, d_outputs=d_outputs)


def loss_and_gradients(
    model: Model, batch: Batch, *, backward: Optional[BackwardFn] = None
) -> Tuple[float, Gradients]:
    """前向与 BPTT；backward 为空时使用 mgu_backward（测试可替换）。"""

    loss, trace = forward_loss(model, batch)
    backward_fn = backward or mgu_backward
    grads = backward_fn(model.cell, model.readout, trace.caches, trace.d_outputs, trace.h0)
    return loss, grads


__all__ = ["ForwardTrace", "forward_loss", "loss_and_gradients"]
