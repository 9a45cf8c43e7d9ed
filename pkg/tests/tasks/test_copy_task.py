"""复制任务生成器测试。"""

from __future__ import annotations

import numpy as np
import pytest

from minigate.autodiff import LossKind
from minigate.common import ArgumentError
from minigate.tasks import gen_copy, sequence_length, task_dims
from minigate.tensor import RngState


def test_layout_for_t_50() -> None:
    batch = gen_copy(50, 8, RngState(1))
    assert batch.steps == 70
    assert batch.loss is LossKind.SOFTMAX_XENT
    inputs = batch.inputs_array()  # T×10×B
    assert np.all(inputs.sum(axis=1) == 1.0)
    symbols = np.argmax(inputs, axis=1)
    assert np.all(symbols[59] == 9)
    assert np.all((symbols[:10] >= 1) & (symbols[:10] <= 8))
    assert np.all(symbols[10:59] == 0)
    assert np.all(symbols[60:] == 0)
    assert np.all(np.sum(symbols == 9, axis=0) == 1)
    assert np.all(batch.targets[:60] == 0)
    assert np.array_equal(batch.targets[60:], symbols[:10])


def test_t_one_has_no_dummy_gap() -> None:
    batch = gen_copy(1, 2, RngState(2))
    symbols = np.argmax(batch.inputs_array(), axis=1)
    assert batch.steps == 21
    assert np.all(symbols[10] == 9)


def test_dims_and_lengths() -> None:
    assert task_dims("copy") == (10, 10)
    assert task_dims("adding") == (2, 1)
    assert sequence_length("copy", 200) == 220
    assert sequence_length("adding", 250) == 250


def test_invalid_t() -> None:
    with pytest.raises(ArgumentError):
        gen_copy(0, 1, RngState(0))
