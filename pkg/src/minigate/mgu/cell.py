"""MGU 前向计算与读出层。

f_t  = σ(W_h^(f)·h_{t-1} + W_x^(f)·x_t + b^(f))
h̃_t = tanh(W_h·(f_t ⊙ h_{t-1}) + W_x·x_t + b)
h_t  = (1 - f_t) ⊙ h_{t-1} + f_t ⊙ h̃_t

批量按列存放：x_t 为 D×B，h 为 H×B。"""

from __future__ import annotations

from typing import List, Sequence, Tuple

from minigate.common import ArgumentError, ShapeError
from minigate.tensor import (
    ElementwiseOp,
    Matrix,
    add_bias,
    elementwise,
    matmul,
    sigmoid,
    tanh_mat,
)

from .models import MguParams, ReadoutParams, StepCache


def combine_state(h_prev: Matrix, f_t: Matrix, h_tilde: Matrix) -> Matrix:
    """门控插值 (1-f)⊙h_prev + f⊙h̃；f = 0 时原样保留 h_prev。"""

    keep = elementwise(ElementwiseOp.MUL, 1.0 - f_t, h_prev)
    write = elementwise(ElementwiseOp.MUL, f_t, h_tilde)
    return elementwise(ElementwiseOp.ADD, keep, write)


def _check_step_shapes(p: MguParams, h_prev: Matrix, x_t: Matrix) -> None:
    if h_prev.ndim != 2 or h_prev.shape[0] != p.hidden_size:
        raise ShapeError(f"h_prev 形状 {h_prev.shape} 与隐藏维度 {p.hidden_size} 不符")
    if x_t.ndim != 2 or x_t.shape[0] != p.input_size:
        raise ShapeError(f"x_t 形状 {x_t.shape} 与输入维度 {p.input_size} 不符")
    if h_prev.shape[1] != x_t.shape[1]:
        raise ShapeError(f"批大小不一致：h_prev {h_prev.shape} vs x_t {x_t.shape}")


def mgu_step(p: MguParams, h_prev: Matrix, x_t: Matrix) -> Tuple[Matrix, StepCache]:
    """单步前向，返回新状态与中间量缓存。"""

    _check_step_shapes(p, h_prev, x_t)
    gate_in = elementwise(ElementwiseOp.ADD, matmul(p.wf_h, h_prev), matmul(p.wf_x, x_t))
    f_t = sigmoid(add_bias(gate_in, p.bf))
    gated = elementwise(ElementwiseOp.MUL, f_t, h_prev)
    cand_in = elementwise(ElementwiseOp.ADD, matmul(p.w_h, gated), matmul(p.w_x, x_t))
    h_tilde = tanh_mat(add_bias(cand_in, p.b))
    h_t = combine_state(h_prev, f_t, h_tilde)
    return h_t, StepCache(x_t=x_t, h_prev=h_prev, f_t=f_t, h_tilde=h_tilde, h_t=h_t)


def mgu_forward(
    p: MguParams, xs: Sequence[Matrix], h0: Matrix
) -> Tuple[List[Matrix], List[StepCache]]:
    """沿时间展开，hs[t] 为第 t 步输出的状态。"""

    if len(xs) == 0:
        raise ArgumentError("输入序列为空")
    hs: List[Matrix] = []
    caches: List[StepCache] = []
    h = h0
    for x_t in xs:
        h, cache = mgu_step(p, h, x_t)
        hs.append(h)
        caches.append(cache)
    return hs, caches


def readout_apply(r: ReadoutParams, h: Matrix) -> Matrix:
    """V·h + c，输出 O×B。"""

    if h.ndim != 2 or h.shape[0] != r.hidden_size:
        raise ShapeError(f"读出层输入形状 {h.shape} 与隐藏维度 {r.hidden_size} 不符")
    return add_bias(matmul(r.v, h), r.c)


__all__ = ["combine_state", "mgu_step", "mgu_forward", "readout_apply"]
