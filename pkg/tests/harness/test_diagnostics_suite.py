"""梯度校验批量运行与实例构造测试。"""

from __future__ import annotations

from minigate.autodiff import Gradients, LossKind, loss_and_gradients, mgu_backward, smallest_gradient
from minigate.harness import GRADCHECK_TOLERANCE, random_instance, run_gradcheck_suite
from minigate.mgu import InitKind


def test_random_instance_is_deterministic_and_well_conditioned() -> None:
    model_a, batch_a = random_instance("xent", InitKind.CONSTANT_ONE, 11)
    model_b, batch_b = random_instance("xent", InitKind.CONSTANT_ONE, 11)
    assert model_a.equals(model_b)
    assert (batch_a.targets == batch_b.targets).all()
    assert batch_a.targets.shape == (12, 4)
    _, grads = loss_and_gradients(model_a, batch_a)
    assert smallest_gradient(grads) >= 1e-6


def test_mse_instance_has_scalar_output() -> None:
    model, batch = random_instance(LossKind.MSE, InitKind.CHRONO_NEGATIVE, 4)
    assert model.dims == (8, 2, 1)
    assert batch.targets.shape == (1, 4)


def test_suite_passes_with_exact_gradients() -> None:
    outcomes = run_gradcheck_suite(trials=3, seed=7)
    assert len(outcomes) == 6
    assert {outcome.loss_kind for outcome in outcomes} == {LossKind.MSE, LossKind.SOFTMAX_XENT}
    assert [outcome.seed for outcome in outcomes[:3]] == [7, 8, 9]
    assert all(outcome.passed for outcome in outcomes)
    assert all(outcome.tolerance == GRADCHECK_TOLERANCE for outcome in outcomes)


def test_suite_flags_corrupted_gradients() -> None:
    def corrupted(*args, **kwargs) -> Gradients:
        grads = mgu_backward(*args, **kwargs)
        grads.d_b *= 1.1
        return grads

    outcomes = run_gradcheck_suite(trials=2, backward=corrupted)
    assert not any(outcome.passed for outcome in outcomes)
