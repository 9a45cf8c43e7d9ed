"""Adam 与 SGD 更新测试。"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np
import pytest

from minigate.autodiff import Gradients
from minigate.common import ArgumentError, NumericError
from minigate.mgu import Model
from minigate.optim import AdamState, adam_step, sgd_step
from minigate.tensor import RngState


def _constant_grads(model: Model, value: float) -> Gradients:
    return Gradients.from_mapping({name: np.full_like(m, value) for name, m in model})


def _random_grads(model: Model, rng: RngState) -> Gradients:
    return Gradients.from_mapping({name: rng.normal(1.0, m.shape) for name, m in model})


def test_zero_gradient_is_a_fixed_point(small_model: Callable[..., Model]) -> None:
    model = small_model()
    updated, state = adam_step(model, _constant_grads(model, 0.0), AdamState.zeros_like(model), 0.001)
    assert updated.equals(model)
    assert state.t == 1


def test_constant_gradient_steps_are_lr_sized(small_model: Callable[..., Model]) -> None:
    """常数梯度下偏差修正后 m̂ = g、v̂ = g²，每步位移约为 lr。"""

    model = small_model()
    state = AdamState.zeros_like(model)
    lr = 0.001
    for step in range(1, 4):
        updated, state = adam_step(model, _constant_grads(model, 0.3), state, lr)
        for (_, before), (_, after) in zip(model, updated):
            assert np.allclose(before - after, lr, rtol=1e-6)
        assert state.t == step
        model = updated


def test_update_magnitude_respects_adam_bound(small_model: Callable[..., Model]) -> None:
    model = small_model()
    state = AdamState.zeros_like(model)
    rng = RngState(3)
    lr = 0.01
    b1, b2 = state.beta1, state.beta2
    for step in range(1, 30):
        updated, state = adam_step(model, _random_grads(model, rng), state, lr)
        bound = (
            lr
            * (1 - b1)
            / math.sqrt(1 - b2)
            / math.sqrt(1 - b1**2 / b2)
            * math.sqrt(1 - b2**step)
            / (1 - b1**step)
        )
        for (_, before), (_, after) in zip(model, updated):
            assert np.all(np.abs(before - after) <= bound * (1 + 1e-9))
        for name in state.v:
            assert np.all(state.v[name] >= 0.0)
        model = updated


def test_adam_is_deterministic_and_does_not_mutate(small_model: Callable[..., Model]) -> None:
    model = small_model()
    snapshot = model.copy()
    grads = _random_grads(model, RngState(1))
    first, _ = adam_step(model, grads, AdamState.zeros_like(model), 0.01)
    second, _ = adam_step(model, grads, AdamState.zeros_like(model), 0.01)
    assert first.equals(second)
    assert model.equals(snapshot)


def test_adam_rejects_bad_learning_rate_and_nan(small_model: Callable[..., Model]) -> None:
    model = small_model()
    with pytest.raises(ArgumentError):
        adam_step(model, _constant_grads(model, 1.0), AdamState.zeros_like(model), 0.0)
    with pytest.raises(NumericError):
        adam_step(model, _constant_grads(model, np.nan), AdamState.zeros_like(model), 0.01)


def test_sgd_step(small_model: Callable[..., Model]) -> None:
    model = small_model()
    updated = sgd_step(model, _constant_grads(model, 2.0), 0.5)
    for (_, before), (_, after) in zip(model, updated):
        assert np.allclose(before - after, 1.0)
