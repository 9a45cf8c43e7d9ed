"""稠密矩阵运算与可复现随机源。"""

from .ops import (
    ElementwiseOp,
    Matrix,
    add_bias,
    all_finite,
    as_matrix,
    elementwise,
    frobenius_norm,
    matmul,
    sigmoid,
    tanh_mat,
    uniform,
    zeros,
)
from .random import RngState

__all__ = [
    "Matrix",
    "RngState",
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
