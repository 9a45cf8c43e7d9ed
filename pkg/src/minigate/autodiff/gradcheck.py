"""有限差分梯度校验。

对每个标量参数 θ 计算中心差分 (L(θ+eps) - L(θ-eps)) / (2·eps)，
与解析梯度比较相对误差 |a - n| / max(|a|, |n|, 1e-8)。
开销为 O(参数个数) 次前向，只适用于小规模问题。"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING, Dict, Optional

import numpy as np

from minigate.common import ArgumentError, NumericError
from minigate.mgu import Model
from minigate.tensor import Matrix, RngState

from .backward import Gradients
from .objective import BackwardFn, forward_loss, loss_and_gradients

if TYPE_CHECKING:
    from minigate.tasks import Batch

_DENOMINATOR_FLOOR = 1e-8


def relative_error(analytic: float, numeric: float) -> float:
    denom = max(abs(analytic), abs(numeric), _DENOMINATOR_FLOOR)
    return abs(analytic - numeric) / denom


def _finite_loss(model: Model, batch: Batch, where: str) -> float:
    loss, _ = forward_loss(model, batch)
    if not math.isfinite(loss):
        raise NumericError(f"梯度校验出现非有限损失（{where}）", details={"loss": loss})
    return loss


def grad_check(
    model: Model, batch: Batch, eps: float, *, backward: Optional[BackwardFn] = None
) -> float:
    """返回所有标量参数上的最大相对误差。不修改传入的模型。"""

    if not eps > 0:
        raise ArgumentError(f"eps 必须为正，当前为 {eps}")
    perturbed = model.copy()
    _, analytic = loss_and_gradients(perturbed, batch, backward=backward)
    worst = 0.0
    for name, theta in perturbed:
        grad = analytic[name]
        for index in np.ndindex(theta.shape):
            original = theta[index]
            theta[index] = original + eps
            loss_plus = _finite_loss(perturbed, batch, f"{name}{list(index)}+eps")
            theta[index] = original - eps
            loss_minus = _finite_loss(perturbed, batch, f"{name}{list(index)}-eps")
            theta[index] = original
            numeric = (loss_plus - loss_minus) / (2.0 * eps)
            worst = max(worst, relative_error(float(grad[index]), numeric))
    return worst


def _shifted(model: Model, direction: Dict[str, Matrix], step: float) -> Model:
    return Model.from_parameters({name: m + step * direction[name] for name, m in model})


def directional_check(
    model: Model, batch: Batch, eps: float, rng: RngState
) -> float:
    """随机单位方向 u 上的方向导数校验，返回相对误差。"""

    if not eps > 0:
        raise ArgumentError(f"eps 必须为正，当前为 {eps}")
    raw = {name: rng.normal(1.0, m.shape) for name, m in model}
    norm = math.sqrt(sum(float(np.sum(d * d)) for d in raw.values()))
    direction = {name: d / norm for name, d in raw.items()}
    _, grads = loss_and_gradients(model, batch)
    analytic = grads.dot(direction)
    loss_plus = _finite_loss(_shifted(model, direction, eps), batch, "+eps·u")
    loss_minus = _finite_loss(_shifted(model, direction, -eps), batch, "-eps·u")
    numeric = (loss_plus - loss_minus) / (2.0 * eps)
    return relative_error(analytic, numeric)


def smallest_gradient(grads: Gradients) -> float:
    """梯度中绝对值最小的分量。"""

    return min(float(np.min(np.abs(g))) for _, g in grads.items())


__all__ = ["grad_check", "directional_check", "relative_error", "smallest_gradient"]
