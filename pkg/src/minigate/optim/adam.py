"""Adam 优化器（带偏差修正）与朴素 SGD 回退。

更新均返回新的 Model 与状态，不修改传入对象。"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from minigate.autodiff import Gradients
from minigate.common import ArgumentError, NumericError, ShapeError
from minigate.mgu import Model
from minigate.tensor import Matrix


@dataclass
class AdamState:
    """一阶矩 m、二阶矩 v 与步数 t。"""

    m: Dict[str, Matrix]
    v: Dict[str, Matrix]
    t: int = 0
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8

    def __post_init__(self) -> None:
        if set(self.m) != set(self.v):
            raise ArgumentError("m 与 v 的参数集合不一致")
        if not (0.0 <= self.beta1 < 1.0 and 0.0 <= self.beta2 < 1.0):
            raise ArgumentError(f"beta 必须位于 [0, 1)：beta1={self.beta1}, beta2={self.beta2}")

    @classmethod
    def zeros_like(
        cls, model: Model, *, beta1: float = 0.9, beta2: float = 0.999, epsilon: float = 1e-8
    ) -> AdamState:
        return cls(
            m={name: np.zeros_like(p) for name, p in model},
            v={name: np.zeros_like(p) for name, p in model},
            beta1=beta1,
            beta2=beta2,
            epsilon=epsilon,
        )


def _check_congruent(model: Model, g: Gradients) -> None:
    if not g.matches(model):
        raise ShapeError("梯度与模型参数形状不一致")


def _finite_or_raise(params: Dict[str, Matrix], step: int) -> None:
    for name, value in params.items():
        if not np.all(np.isfinite(value)):
            raise NumericError(f"参数 {name} 更新后出现非有限数值", details={"step": step, "param": name})


def adam_step(model: Model, g: Gradients, s: AdamState, lr: float) -> Tuple[Model, AdamState]:
    """θ ← θ - lr·m̂/(√v̂ + ε)，m̂、v̂ 为偏差修正后的矩估计。"""

    if not lr > 0:
        raise ArgumentError(f"学习率必须为正，当前为 {lr}")
    _check_congruent(model, g)
    t = s.t + 1
    bc1 = 1.0 - s.beta1**t
    bc2 = 1.0 - s.beta2**t
    new_m: Dict[str, Matrix] = {}
    new_v: Dict[str, Matrix] = {}
    new_params: Dict[str, Matrix] = {}
    for name, theta in model:
        grad = g[name]
        if s.m[name].shape != theta.shape:
            raise ShapeError(f"Adam 状态 {name} 形状 {s.m[name].shape} 与参数 {theta.shape} 不一致")
        m = s.beta1 * s.m[name] + (1.0 - s.beta1) * grad
        v = s.beta2 * s.v[name] + (1.0 - s.beta2) * (grad * grad)
        update = lr * (m / bc1) / (np.sqrt(v / bc2) + s.epsilon)
        new_m[name] = m
        new_v[name] = v
        new_params[name] = theta - update
    _finite_or_raise(new_params, t)
    state = AdamState(m=new_m, v=new_v, t=t, beta1=s.beta1, beta2=s.beta2, epsilon=s.epsilon)
    return Model.from_parameters(new_params), state


def sgd_step(model: Model, g: Gradients, lr: float) -> Model:
    """θ ← θ - lr·g。"""

    if not lr > 0:
        raise ArgumentError(f"学习率必须为正，当前为 {lr}")
    _check_congruent(model, g)
    new_params = {name: theta - lr * g[name] for name, theta in model}
    _finite_or_raise(new_params, 0)
    return Model.from_parameters(new_params)


__all__ = ["AdamState", "adam_step", "sgd_step"]
