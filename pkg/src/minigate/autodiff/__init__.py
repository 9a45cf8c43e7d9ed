"""损失函数、BPTT 反向传播与有限差分梯度校验。"""

from .backward import Gradients, final_step_only, mgu_backward
from .gradcheck import directional_check, grad_check, relative_error, smallest_gradient
from .losses import LossKind, mse_loss, softmax_xent_loss
from .objective import ForwardTrace, forward_loss, loss_and_gradients

__all__ = [
    "LossKind",
    "mse_loss",
    "softmax_xent_loss",
    "Gradients",
    "mgu_backward",
    "final_step_only",
    "ForwardTrace",
    "forward_loss",
    "loss_and_gradients",
    "grad_check",
    "directional_check",
    "relative_error",
    "smallest_gradient",
]
