"""训练循环测试。"""

from __future__ import annotations

import math

import numpy as np
import pytest
from pytest_mock import MockerFixture

from minigate.common import NumericError
from minigate.harness import TrainConfig, derive_streams, train_run, trainer
from minigate.mgu import InitKind


def _tiny(**fields: object) -> TrainConfig:
    base = dict(iterations=10, batch_size=8, hidden_size=8, seed=1)
    base.update(fields)
    return TrainConfig.for_task("adding", 10, InitKind.CHRONO_POSITIVE, **base)


def test_records_every_iteration() -> None:
    log = train_run(_tiny())
    assert log.iterations == list(range(1, 11))
    assert all(math.isfinite(loss) for loss in log.values)
    assert log.final_model is not None
    assert log.wall_time_s > 0.0
    assert len(log.clip_scales) == 10


def test_log_every_thins_the_curve() -> None:
    log = train_run(_tiny(iterations=12, log_every=4))
    assert log.iterations == [4, 8, 12]


def test_identical_configs_give_identical_logs() -> None:
    assert train_run(_tiny()).losses == train_run(_tiny()).losses


def test_data_stream_is_independent_of_init_kind() -> None:
    """初始化子流与数据子流只由种子决定。"""

    init_a, data_a = derive_streams(1)
    init_b, data_b = derive_streams(1)
    assert (init_a.seed, data_a.seed) == (init_b.seed, data_b.seed)
    assert init_a.seed != data_a.seed
    assert derive_streams(2)[1].seed != data_a.seed


def test_copy_loss_starts_near_uniform() -> None:
    cfg = TrainConfig.for_task("copy", 10, iterations=2, batch_size=16, hidden_size=16, seed=2)
    log = train_run(cfg)
    assert 0.5 * math.log(10.0) <= log.values[0] <= 3.0 * math.log(10.0)


def test_sgd_optimizer_runs() -> None:
    log = train_run(_tiny(optimizer="sgd"))
    assert len(log.losses) == 10


def test_non_finite_loss_aborts_with_diagnostics(mocker: MockerFixture) -> None:
    real = trainer.loss_and_gradients
    calls = {"n": 0}

    def flaky(model, batch, **kwargs):
        calls["n"] += 1
        loss, grads = real(model, batch, **kwargs)
        return (float("nan") if calls["n"] == 3 else loss), grads

    mocker.patch.object(trainer, "loss_and_gradients", side_effect=flaky)
    with pytest.raises(NumericError) as excinfo:
        train_run(_tiny())
    details = excinfo.value.details
    assert details["iteration"] == 3
    assert math.isfinite(details["last_logged_loss"])
    assert "clip_events" in details


def test_first_crossing_and_tail_mean() -> None:
    log = train_run(_tiny())
    log.losses = [(1, 0.5), (2, 0.2), (3, 0.005), (4, 0.001)]
    assert log.first_crossing(0.01) == 3
    assert log.first_crossing(0.0001) is None
    assert log.tail_mean(2) == pytest.approx(0.003)
    frame = log.to_frame()
    assert list(frame.columns) == ["iteration", "loss"]
    assert np.array_equal(frame["iteration"].to_numpy(), [1, 2, 3, 4])
