"""参数初始化：权重按 ±1/√fan_in 均匀抽样，门偏置按初始化规格设置。

chrono 方式的门偏置为 log(U([1, t_max-1]))（连续均匀分布），
负号变体取其相反数；const 方式门偏置全部为 1。"""

from __future__ import annotations

import math

import numpy as np

from minigate.common import ArgumentError
from minigate.tensor import Matrix, RngState, sigmoid, uniform, zeros

from .models import InitKind, InitSpec, Model, MguParams, ReadoutParams


def _scaled_uniform(rng: RngState, rows: int, cols: int) -> Matrix:
    bound = 1.0 / math.sqrt(cols)
    return uniform(rng, -bound, bound, rows, cols)


def chrono_bias(rng: RngState, hidden: int, t_max: int, *, negative: bool = False) -> Matrix:
    """按 log(U([1, t_max-1])) 抽样门偏置；t_max = 2 时退化为全 0。"""

    if t_max < 2:
        raise ArgumentError(f"chrono 初始化要求 t_max ≥ 2，当前为 {t_max}")
    if t_max == 2:
        draws = np.ones((hidden, 1), dtype=np.float64)
    else:
        draws = uniform(rng, 1.0, float(t_max - 1), hidden, 1)
    bias = np.log(draws)
    return -bias if negative else bias


def gate_bias(spec: InitSpec, hidden: int, rng: RngState) -> Matrix:
    if spec.kind is InitKind.CONSTANT_ONE:
        return np.ones((hidden, 1), dtype=np.float64)
    return chrono_bias(rng, hidden, spec.t_max, negative=spec.kind is InitKind.CHRONO_NEGATIVE)


def init_model(h: int, d: int, o: int, spec: InitSpec, rng: RngState) -> Model:
    """构造 H 维隐藏、D 维输入、O 维输出的模型。"""

    for name, value in (("h", h), ("d", d), ("o", o)):
        if not isinstance(value, (int, np.integer)) or value < 1:
            raise ArgumentError(f"维度 {name} 必须为正整数，当前为 {value!r}")
    cell = MguParams(
        wf_h=_scaled_uniform(rng, h, h),
        wf_x=_scaled_uniform(rng, h, d),
        bf=gate_bias(spec, h, rng),
        w_h=_scaled_uniform(rng, h, h),
        w_x=_scaled_uniform(rng, h, d),
        b=zeros(h, 1),
    )
    readout = ReadoutParams(v=_scaled_uniform(rng, o, h), c=zeros(o, 1))
    return Model(cell=cell, readout=readout)


def gate_time_constants(bf: Matrix) -> Matrix:
    """门偏置对应的初始特征时间 1/σ(bf)：门接近 0 时状态保留更久。"""

    return 1.0 / sigmoid(bf)


__all__ = ["chrono_bias", "gate_bias", "init_model", "gate_time_constants"]
