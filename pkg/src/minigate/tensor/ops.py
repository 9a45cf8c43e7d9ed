"""稠密实矩阵运算。

矩阵统一使用二维 float64 的 numpy 数组表示，向量为 n×1 矩阵。
所有运算均为纯函数；维度不符时抛出 ShapeError 并给出双方形状。"""

from __future__ import annotations

from enum import Enum
from typing import Any

import numpy as np
import numpy.typing as npt

from minigate.common import ArgumentError, ShapeError

from .random import RngState

Matrix = npt.NDArray[np.float64]

# 饱和时仍保持严格开区间
_TINY = np.finfo(np.float64).tiny
_ONE_MINUS = 1.0 - np.finfo(np.float64).epsneg


class ElementwiseOp(str, Enum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"


def as_matrix(values: Any) -> Matrix:
    """转换为二维 float64 矩阵，一维输入视为列向量。"""

    arr = np.array(values, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ArgumentError(f"矩阵必须是非空二维数组，当前形状 {arr.shape}")
    return arr


def zeros(rows: int, cols: int) -> Matrix:
    if rows < 1 or cols < 1:
        raise ArgumentError(f"矩阵维度必须为正，当前为 {rows}×{cols}")
    return np.zeros((rows, cols), dtype=np.float64)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    """标准矩阵乘积。"""

    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise ShapeError(f"matmul 维度不匹配：{a.shape} · {b.shape}")
    return a @ b


def elementwise(op: ElementwiseOp | str, a: Matrix, b: Matrix) -> Matrix:
    """逐元素加、减、乘（⊙）。"""

    if a.shape != b.shape:
        raise ShapeError(f"{ElementwiseOp(op).value} 形状不一致：{a.shape} vs {b.shape}")
    kind = ElementwiseOp(op)
    if kind is ElementwiseOp.ADD:
        return a + b
    if kind is ElementwiseOp.SUB:
        return a - b
    return a * b


def add_bias(m: Matrix, bias: Matrix) -> Matrix:
    """将 n×1 偏置按列广播加到 n×B 矩阵上。"""

    if bias.ndim != 2 or bias.shape[1] != 1 or bias.shape[0] != m.shape[0]:
        raise ShapeError(f"偏置形状 {bias.shape} 无法广播到 {m.shape}")
    return m + bias


def sigmoid(a: Matrix) -> Matrix:
    """逐元素 1/(1+e^(-x))，输出严格位于 (0, 1)。"""

    # 按符号分支：只对 -|x| 取指数，负半轴不做 1 - (≈1) 的相减
    z = np.exp(-np.abs(a))
    out = np.where(a >= 0.0, 1.0 / (1.0 + z), z / (1.0 + z))
    return np.clip(out, _TINY, _ONE_MINUS)


def tanh_mat(a: Matrix) -> Matrix:
    """逐元素双曲正切，输出严格位于 (-1, 1)。"""

    return np.clip(np.tanh(a), -_ONE_MINUS, _ONE_MINUS)


def uniform(rng: RngState, lo: float, hi: float, rows: int, cols: int) -> Matrix:
    """[lo, hi) 上独立同分布的连续均匀矩阵。"""

    if not lo < hi:
        raise ArgumentError(f"均匀分布区间无效：lo={lo} 必须小于 hi={hi}")
    if rows < 1 or cols < 1:
        raise ArgumentError(f"矩阵维度必须为正，当前为 {rows}×{cols}")
    draws = lo + (hi - lo) * rng.random((rows, cols))
    # lo + (hi-lo)·u 可能舍入到 hi
    return np.minimum(draws, np.nextafter(hi, lo))


def frobenius_norm(m: Matrix) -> float:
    return float(np.sqrt(np.sum(m * m)))


def all_finite(m: Matrix) -> bool:
    return bool(np.all(np.isfinite(m)))


__all__ = [
    "Matrix",
    "ElementwiseOp",
    "as_matrix",
    "zeros",
    "matmul",
    "elementwise",
    "add_bias",
    "sigmoid",
    "tanh_mat",
    "uniform",
    "frobenius_norm",
    "all_finite",
]
