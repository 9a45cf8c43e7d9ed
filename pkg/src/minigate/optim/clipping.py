"""全局范数梯度裁剪。"""

from __future__ import annotations

from typing import Optional, Tuple

from minigate.autodiff import Gradients
from minigate.common import ArgumentError, NumericError


def clip_global_norm(g: Gradients, max_norm: Optional[float]) -> Tuple[Gradients, float]:
    """全部梯度元素的 L2 范数超过 max_norm 时整体缩放，返回 (梯度, 缩放系数)。

    max_norm 为 None 表示关闭裁剪。"""

    if not g.all_finite():
        raise NumericError("梯度包含非有限数值", details={"stage": "clip"})
    if max_norm is None:
        return g, 1.0
    if not max_norm > 0:
        raise ArgumentError(f"max_norm 必须为正，当前为 {max_norm}")
    norm = g.global_norm()
    if norm <= max_norm:
        return g, 1.0
    scale = max_norm / norm
    return g.scaled(scale), scale


__all__ = ["clip_global_norm"]
