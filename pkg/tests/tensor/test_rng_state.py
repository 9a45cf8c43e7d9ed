"""可复现随机源测试。"""

from __future__ import annotations

import numpy as np
import pytest

from minigate.common import ArgumentError
from minigate.tensor import RngState


def test_same_seed_same_sequence() -> None:
    first, second = RngState(42), RngState(42)
    assert np.array_equal(first.random((5,)), second.random((5,)))
    assert np.array_equal(first.integers(0, 10, 8), second.integers(0, 10, 8))


def test_spawn_is_deterministic_and_does_not_advance_parent() -> None:
    parent = RngState(42)
    child_a = parent.spawn(0)
    child_b = RngState(42).spawn(0)
    assert child_a.seed == child_b.seed
    assert parent.spawn(0).seed != parent.spawn(1).seed
    assert np.array_equal(parent.random((3,)), RngState(42).random((3,)))


@pytest.mark.parametrize("seed", [-1, 2**64])
def test_seed_must_be_unsigned_64_bit(seed: int) -> None:
    with pytest.raises(ArgumentError):
        RngState(seed)


def test_integers_rejects_empty_range() -> None:
    with pytest.raises(ArgumentError):
        RngState(0).integers(3, 3, 1)
