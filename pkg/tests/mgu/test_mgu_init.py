"""参数初始化测试：chrono 与常数门偏置。"""

from __future__ import annotations

import math

import numpy as np
import pytest

from minigate.common import ArgumentError
from minigate.mgu import (
    InitKind,
    InitSpec,
    chrono_bias,
    gate_bias,
    gate_time_constants,
    init_model,
)
from minigate.tensor import RngState


def test_chrono_t_max_two_degenerates_to_zero() -> None:
    bias = gate_bias(InitSpec(InitKind.CHRONO_POSITIVE, 2), 16, RngState(1))
    assert np.array_equal(bias, np.zeros((16, 1)))


def test_constant_init_sets_every_gate_bias_to_one() -> None:
    model = init_model(8, 2, 1, InitSpec(InitKind.CONSTANT_ONE), RngState(1))
    assert np.array_equal(model.cell.bf, np.ones((8, 1)))


def test_chrono_bounds_and_mean_for_t_max_51() -> None:
    """E[ln U(1,50)] = (50·ln 50 − 49)/49 ≈ 2.992。"""

    bias = chrono_bias(RngState(3), 100_000, 51)
    assert np.all(bias >= 0.0)
    assert np.all(bias <= math.log(50.0))
    expected = (50.0 * math.log(50.0) - 49.0) / 49.0
    assert abs(float(bias.mean()) - expected) < 0.05


def test_chrono_negative_is_negation() -> None:
    positive = chrono_bias(RngState(4), 32, 70)
    negative = chrono_bias(RngState(4), 32, 70, negative=True)
    assert np.array_equal(negative, -positive)


def test_weights_are_scaled_uniform_and_biases_zero() -> None:
    model = init_model(16, 4, 3, InitSpec(InitKind.CHRONO_POSITIVE, 50), RngState(5))
    for name, fan_in in (("wf_h", 16), ("wf_x", 4), ("w_h", 16), ("w_x", 4), ("v", 16)):
        matrix = model.parameters()[name]
        assert np.all(np.abs(matrix) <= 1.0 / math.sqrt(fan_in))
    assert np.array_equal(model.cell.b, np.zeros((16, 1)))
    assert np.array_equal(model.readout.c, np.zeros((3, 1)))
    assert model.dims == (16, 4, 3)
    assert model.num_parameters == 2 * 16 * 16 + 2 * 16 * 4 + 2 * 16 + 3 * 16 + 3


def test_init_is_deterministic_per_seed() -> None:
    spec = InitSpec.for_sequence(InitKind.CHRONO_POSITIVE, 50)
    assert init_model(8, 2, 1, spec, RngState(9)).equals(init_model(8, 2, 1, spec, RngState(9)))
    assert not init_model(8, 2, 1, spec, RngState(9)).equals(init_model(8, 2, 1, spec, RngState(10)))


@pytest.mark.parametrize("dims", [(0, 2, 1), (4, 0, 1), (4, 2, 0)])
def test_invalid_dimensions_rejected(dims: tuple) -> None:
    with pytest.raises(ArgumentError):
        init_model(*dims, InitSpec(InitKind.CONSTANT_ONE), RngState(0))


def test_init_spec_validation_and_labels() -> None:
    with pytest.raises(ArgumentError):
        InitSpec(InitKind.CHRONO_POSITIVE, 1)
    assert InitSpec.for_sequence("chrono", 70).t_max == 70
    assert InitKind.CONSTANT_ONE.label == "MGU (Const.)"
    assert InitKind("chrono-neg") is InitKind.CHRONO_NEGATIVE


def test_gate_time_constants() -> None:
    """bf = 0 时 σ = 0.5，特征时间为 2。"""

    constants = gate_time_constants(np.zeros((3, 1)))
    assert np.allclose(constants, 2.0)
    assert np.all(gate_time_constants(np.array([[-3.0]])) > gate_time_constants(np.array([[3.0]])))


def test_model_copy_is_independent() -> None:
    model = init_model(4, 2, 1, InitSpec(InitKind.CONSTANT_ONE), RngState(2))
    clone = model.copy()
    clone.cell.bf[0, 0] = 5.0
    assert model.cell.bf[0, 0] == 1.0
    assert list(name for name, _ in model) == ["wf_h", "wf_x", "bf", "w_h", "w_x", "b", "v", "c"]
