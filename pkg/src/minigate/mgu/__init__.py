"""Minimal Gated Unit：参数、初始化与前向计算。"""

from .cell import combine_state, mgu_forward, mgu_step, readout_apply
from .init import chrono_bias, gate_bias, gate_time_constants, init_model
from .models import (
    PARAMETER_NAMES,
    InitKind,
    InitSpec,
    MguParams,
    Model,
    ReadoutParams,
    StepCache,
)

__all__ = [
    "PARAMETER_NAMES",
    "InitKind",
    "InitSpec",
    "MguParams",
    "ReadoutParams",
    "Model",
    "StepCache",
    "init_model",
    "chrono_bias",
    "gate_bias",
    "gate_time_constants",
    "mgu_step",
    "mgu_forward",
    "readout_apply",
    "combine_state",
]
