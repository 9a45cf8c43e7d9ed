"""MGU 与读出层的精确反向传播（BPTT）。

逐步反向时 f_t 的三处使用（门控 h_{t-1}、写入 h̃_t、保留 h_{t-1}）
与 h_{t-1} 的两处使用（门输入、候选输入）的梯度都会累加。
导数：dσ = σ(1-σ)，d tanh = 1 - tanh²。"""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Dict, Iterator, Mapping, Optional, Sequence, Tuple

import numpy as np

from minigate.common import ArgumentError, ShapeError
from minigate.mgu import PARAMETER_NAMES, Model, MguParams, ReadoutParams, StepCache
from minigate.tensor import Matrix, matmul


@dataclass
class Gradients:
    """与 Model 逐参数同形的梯度。"""

    d_wf_h: Matrix
    d_wf_x: Matrix
    d_bf: Matrix
    d_w_h: Matrix
    d_w_x: Matrix
    d_b: Matrix
    d_v: Matrix
    d_c: Matrix

    @classmethod
    def zeros_like(cls, model: Model) -> Gradients:
        return cls.from_mapping({name: np.zeros_like(m) for name, m in model})

    @classmethod
    def from_mapping(cls, grads: Mapping[str, Matrix]) -> Gradients:
        missing = [name for name in PARAMETER_NAMES if name not in grads]
        if missing:
            raise ArgumentError(f"缺少梯度：{missing}")
        return cls(**{f"d_{name}": grads[name] for name in PARAMETER_NAMES})

    def __getitem__(self, name: str) -> Matrix:
        return getattr(self, f"d_{name}")

    def items(self) -> Iterator[Tuple[str, Matrix]]:
        """按参数名（去掉 d_ 前缀）迭代。"""

        for item in fields(self):
            yield item.name[2:], getattr(self, item.name)

    def as_dict(self) -> Dict[str, Matrix]:
        return dict(self.items())

    def global_norm(self) -> float:
        return float(np.sqrt(sum(float(np.sum(g * g)) for _, g in self.items())))

    def scaled(self, factor: float) -> Gradients:
        return Gradients.from_mapping({name: g * factor for name, g in self.items()})

    def dot(self, other: Gradients | Mapping[str, Matrix]) -> float:
        lookup = other.as_dict() if isinstance(other, Gradients) else other
        return float(sum(float(np.sum(g * lookup[name])) for name, g in self.items()))

    def all_finite(self) -> bool:
        return all(bool(np.all(np.isfinite(g))) for _, g in self.items())

    def matches(self, model: Model) -> bool:
        params = model.parameters()
        return all(g.shape == params[name].shape for name, g in self.items())


def final_step_only(d_pred: Matrix, steps: int) -> list[Optional[Matrix]]:
    """只监督最后一步时的上游梯度序列。"""

    return [None] * (steps - 1) + [d_pred]


def mgu_backward(
    p: MguParams,
    r: ReadoutParams,
    caches: Sequence[StepCache],
    d_outputs: Sequence[Optional[Matrix]],
    h0: Matrix,
) -> Gradients:
    """d_outputs[t] 为第 t 步读出输出的上游梯度（O×B），None 表示该步不受监督。"""

    if len(caches) != len(d_outputs):
        raise ShapeError(f"缓存长度 {len(caches)} 与上游梯度长度 {len(d_outputs)} 不一致")
    if not caches:
        raise ArgumentError("缓存序列为空")
    if caches[0].h_prev.shape != h0.shape:
        raise ShapeError(f"h0 形状 {h0.shape} 与缓存 {caches[0].h_prev.shape} 不符")

    d_wf_h = np.zeros_like(p.wf_h)
    d_wf_x = np.zeros_like(p.wf_x)
    d_bf = np.zeros_like(p.bf)
    d_w_h = np.zeros_like(p.w_h)
    d_w_x = np.zeros_like(p.w_x)
    d_b = np.zeros_like(p.b)
    d_v = np.zeros_like(r.v)
    d_c = np.zeros_like(r.c)

    dh_next = np.zeros_like(h0)
    for cache, d_out in zip(reversed(caches), reversed(d_outputs)):
        dh = dh_next
        if d_out is not None:
            if d_out.shape != (r.output_size, cache.h_t.shape[1]):
                raise ShapeError(f"上游梯度形状 {d_out.shape} 与输出形状不符")
            d_v += matmul(d_out, cache.h_t.T)
            d_c += d_out.sum(axis=1, keepdims=True)
            dh = dh + matmul(r.v.T, d_out)

        f, h_prev, h_tilde, x_t = cache.f_t, cache.h_prev, cache.h_tilde, cache.x_t

        # h_t = (1-f)⊙h_prev + f⊙h̃
        d_h_tilde = dh * f
        d_f = dh * (h_tilde - h_prev)
        dh_prev = dh * (1.0 - f)

        # h̃ = tanh(W_h·(f⊙h_prev) + W_x·x + b)
        d_cand = d_h_tilde * (1.0 - h_tilde * h_tilde)
        gated = f * h_prev
        d_w_h += matmul(d_cand, gated.T)
        d_w_x += matmul(d_cand, x_t.T)
        d_b += d_cand.sum(axis=1, keepdims=True)
        d_gated = matmul(p.w_h.T, d_cand)
        d_f += d_gated * h_prev
        dh_prev += d_gated * f

        # f = σ(W_h^(f)·h_prev + W_x^(f)·x + b^(f))
        d_gate = d_f * f * (1.0 - f)
        d_wf_h += matmul(d_gate, h_prev.T)
        d_wf_x += matmul(d_gate, x_t.T)
        d_bf += d_gate.sum(axis=1, keepdims=True)
        dh_prev += matmul(p.wf_h.T, d_gate)

        dh_next = dh_prev

    return Gradients(
        d_wf_h=d_wf_h,
        d_wf_x=d_wf_x,
        d_bf=d_bf,
        d_w_h=d_w_h,
        d_w_x=d_w_x,
        d_b=d_b,
        d_v=d_v,
        d_c=d_c,
    )


__all__ = ["Gradients", "mgu_backward", "final_step_only"]
