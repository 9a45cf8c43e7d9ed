"""稠密矩阵运算测试。"""

from __future__ import annotations

import math

import numpy as np
import pytest

from minigate.common import ArgumentError, ShapeError
from minigate.tensor import (
    ElementwiseOp,
    RngState,
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


def test_matmul_hand_values() -> None:
    """单位阵、手算乘积与零矩阵。"""

    column = as_matrix([[3.0], [7.0]])
    assert np.array_equal(matmul(np.eye(2), column), column)
    assert np.array_equal(matmul(as_matrix([[1, 2], [3, 4]]), as_matrix([[1], [1]])), column)
    assert np.array_equal(matmul(as_matrix([[1, 2], [3, 4]]), zeros(2, 3)), zeros(2, 3))


def test_matmul_shape_error_names_both_shapes() -> None:
    with pytest.raises(ShapeError, match=r"\(2, 3\).*\(2, 1\)"):
        matmul(zeros(2, 3), zeros(2, 1))


def test_matmul_is_associative_on_random_triples() -> None:
    rng = RngState(5)
    for _ in range(10):
        a, b, c = (uniform(rng, -1.0, 1.0, 3, 3) for _ in range(3))
        left = matmul(matmul(a, b), c)
        right = matmul(a, matmul(b, c))
        assert np.allclose(left, right, rtol=1e-9, atol=1e-12)


def test_elementwise_hand_values() -> None:
    a = as_matrix([[2.0, 3.0]])
    assert np.array_equal(elementwise(ElementwiseOp.MUL, a, as_matrix([[0.0, 1.0]])), as_matrix([[0.0, 3.0]]))
    assert np.array_equal(elementwise("add", a, np.zeros_like(a)), a)
    assert np.array_equal(elementwise(ElementwiseOp.SUB, a, a), np.zeros_like(a))
    with pytest.raises(ShapeError):
        elementwise(ElementwiseOp.ADD, a, zeros(2, 1))


def test_add_bias_broadcasts_columns() -> None:
    m = zeros(2, 3)
    out = add_bias(m, as_matrix([1.0, -1.0]))
    assert np.array_equal(out, as_matrix([[1, 1, 1], [-1, -1, -1]]))
    with pytest.raises(ShapeError):
        add_bias(m, zeros(3, 1))


def test_as_matrix_treats_vectors_as_columns() -> None:
    assert as_matrix([1.0, 2.0, 3.0]).shape == (3, 1)
    with pytest.raises(ArgumentError):
        as_matrix(np.zeros((2, 2, 2)))


def test_sigmoid_values_and_symmetry() -> None:
    assert sigmoid(as_matrix([[0.0]]))[0, 0] == pytest.approx(0.5)
    assert sigmoid(as_matrix([[math.log(3.0)]]))[0, 0] == pytest.approx(0.75, abs=1e-15)
    x = RngState(1).normal(3.0, (4, 5))
    assert np.allclose(sigmoid(-x), 1.0 - sigmoid(x), atol=1e-15)


def test_sigmoid_keeps_relative_precision_on_negative_tail() -> None:
    got = sigmoid(as_matrix([[-40.0, -30.0, -700.0]]))
    for value, x in zip(got[0], (-40.0, -30.0, -700.0)):
        assert value == pytest.approx(1.0 / (1.0 + math.exp(-x)), rel=1e-12)


def test_sigmoid_and_tanh_ranges_are_strict() -> None:
    extreme = as_matrix([[-1000.0, -50.0, 0.0, 50.0, 1000.0]])
    s = sigmoid(extreme)
    t = tanh_mat(extreme)
    assert np.all((s > 0.0) & (s < 1.0))
    assert np.all((t > -1.0) & (t < 1.0))
    assert all_finite(s) and all_finite(t)


def test_tanh_hand_values() -> None:
    assert tanh_mat(as_matrix([[0.0]]))[0, 0] == 0.0
    x = RngState(2).normal(2.0, (3, 3))
    assert np.allclose(tanh_mat(-x), -tanh_mat(x), rtol=0.0, atol=1e-15)
    assert abs(tanh_mat(as_matrix([[20.0]]))[0, 0] - 1.0) < 1e-12


def test_uniform_range_mean_and_determinism() -> None:
    draws = uniform(RngState(3), 0.0, 1.0, 100_000, 1)
    assert np.all((draws >= 0.0) & (draws < 1.0))
    assert abs(float(draws.mean()) - 0.5) < 0.01
    assert np.array_equal(uniform(RngState(9), -2.0, 2.0, 4, 4), uniform(RngState(9), -2.0, 2.0, 4, 4))


def test_uniform_never_returns_upper_bound_on_narrow_interval() -> None:
    hi = float(np.nextafter(1.0, 2.0))
    draws = uniform(RngState(4), 1.0, hi, 1000, 1)
    assert np.all(draws < hi)
    assert np.all(draws == 1.0)


@pytest.mark.parametrize("lo, hi", [(1.0, 1.0), (2.0, 1.0)])
def test_uniform_rejects_empty_interval(lo: float, hi: float) -> None:
    with pytest.raises(ArgumentError):
        uniform(RngState(0), lo, hi, 2, 2)


def test_frobenius_norm() -> None:
    assert frobenius_norm(as_matrix([[3.0, 4.0]])) == pytest.approx(5.0)
    assert not all_finite(as_matrix([[np.nan]]))
