"""多种子实验与复现网格测试。"""

from __future__ import annotations

import pytest
from pytest_mock import MockerFixture

from minigate.common import ArgumentError, ExperimentError
from minigate.harness import (
    AxisLabel,
    ExperimentGrid,
    FigureSpec,
    RunLog,
    TrainConfig,
    iter_runs,
    run_experiment,
)
from minigate.harness import experiment
from minigate.harness.experiment import FAST_HIDDEN, FAST_ITERATIONS
from minigate.mgu import InitKind
from minigate.tasks import TaskName


def _base() -> TrainConfig:
    return TrainConfig.for_task("adding", 10, InitKind.CONSTANT_ONE, iterations=3, batch_size=4, hidden_size=4)


def test_full_grid_covers_four_figures() -> None:
    grid = ExperimentGrid.full()
    assert [figure.name for figure in grid.figures] == ["adding-50", "adding-250", "copy-50", "copy-200"]
    assert grid.run_count == 24
    assert len(grid.configs) == 24
    copy_cfg = grid.config_for(FigureSpec(TaskName.COPY, 200), InitKind.CHRONO_POSITIVE)
    assert copy_cfg.init.t_max == 220
    assert copy_cfg.batch_size == 128


def test_fast_grid_shrinks_runs() -> None:
    grid = ExperimentGrid.fast()
    assert [figure.name for figure in grid.figures] == ["adding-50"]
    assert all(cfg.hidden_size == FAST_HIDDEN for cfg in grid.configs)
    assert all(cfg.iterations == FAST_ITERATIONS for cfg in grid.configs)
    assert grid.run_count == 6


def test_figure_axis_follows_loss() -> None:
    assert FigureSpec(TaskName.ADDING, 50).axis is AxisLabel.MSE
    assert FigureSpec(TaskName.COPY, 50).axis is AxisLabel.XENT


def test_run_experiment_keeps_seed_order() -> None:
    logs = run_experiment(_base(), [3, 1, 2], max_workers=1)
    assert [log.config.seed for log in logs] == [3, 1, 2]
    assert all(len(log.losses) == 3 for log in logs)


def test_failed_run_reports_seed(mocker: MockerFixture) -> None:
    mocker.patch.object(experiment, "train_run", side_effect=RuntimeError("boom"))
    with pytest.raises(ExperimentError) as excinfo:
        run_experiment(_base(), [5], max_workers=1)
    assert excinfo.value.seed == 5


def test_empty_seed_list_is_rejected() -> None:
    with pytest.raises(ArgumentError):
        run_experiment(_base(), [])
    with pytest.raises(ArgumentError):
        ExperimentGrid.full(seeds=())


def test_grid_run_groups_logs_by_figure_and_init(mocker: MockerFixture) -> None:
    calls: list[TrainConfig] = []

    def fake(cfg: TrainConfig) -> RunLog:
        calls.append(cfg)
        return RunLog(config=cfg, losses=[(1, 0.5)])

    mocker.patch.object(experiment, "train_run", side_effect=fake)
    grid = ExperimentGrid.full(seeds=(7, 8))
    groups = list(grid.run(max_workers=1))
    assert len(calls) == grid.run_count == 16
    assert [(figure.name, init) for figure, init, _ in groups] == [
        (figure.name, init) for figure in grid.figures for init in grid.inits
    ]
    for figure, init, logs in groups:
        assert [log.config.seed for log in logs] == [7, 8]
        assert all(log.config.figure == figure.name for log in logs)
        assert all(log.config.init.kind is init for log in logs)


def test_pooled_runs_match_sequential_runs() -> None:
    configs = [_base().with_seed(seed) for seed in (1, 2)] + [
        TrainConfig.for_task(
            "copy", 5, InitKind.CHRONO_POSITIVE, iterations=2, batch_size=2, hidden_size=4, seed=3
        )
    ]
    pooled = list(iter_runs(configs, max_workers=3))
    sequential = list(iter_runs(configs, max_workers=1))
    assert [log.config for log in pooled] == configs
    assert [log.losses for log in pooled] == [log.losses for log in sequential]
