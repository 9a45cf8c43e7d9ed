"""收敛摘要与结论核对测试。"""

from __future__ import annotations

from typing import Dict, List, Sequence

import pytest

from minigate.harness import (
    FigureResult,
    FigureSpec,
    RunLog,
    TrainConfig,
    aggregate,
    evaluate_claims,
    summarize,
)
from minigate.harness.summary import SUMMARY_COLUMNS
from minigate.mgu import InitKind
from minigate.tasks import TaskName

CHRONO = InitKind.CHRONO_POSITIVE
CONST = InitKind.CONSTANT_ONE


def _log(figure: FigureSpec, init: InitKind, seed: int, values: Sequence[float]) -> RunLog:
    cfg = TrainConfig.for_task(figure.task, figure.size, init, seed=seed)
    return RunLog(config=cfg, losses=[(i + 1, float(v)) for i, v in enumerate(values)], wall_time_s=1.5)


def _result(figure: FigureSpec, curves: Dict[InitKind, List[Sequence[float]]]) -> FigureResult:
    result = FigureResult(figure)
    for init, per_seed in curves.items():
        logs = [_log(figure, init, seed, values) for seed, values in enumerate(per_seed, start=1)]
        result.logs[init] = logs
        result.curves[init] = aggregate(logs)
    return result


def _drop(start: float, cross_at: int, length: int) -> List[float]:
    """在 cross_at 次迭代首次低于 0.01 的损失曲线。"""

    return [start if i + 1 < cross_at else 0.005 for i in range(length)]


def test_summary_frame_columns_and_values() -> None:
    figure = FigureSpec(TaskName.ADDING, 50)
    result = _result(figure, {CHRONO: [_drop(0.2, 3, 6)] * 3, CONST: [[0.2] * 6] * 3})
    frame = summarize([result])
    assert tuple(frame.columns) == SUMMARY_COLUMNS
    chrono = frame[frame["init"] == CHRONO.value].iloc[0]
    const = frame[frame["init"] == CONST.value].iloc[0]
    assert chrono["first_crossing"] == 3
    assert chrono["seeds_crossed"] == 3
    assert const["seeds_crossed"] == 0
    assert const["final_mean"] == pytest.approx(0.2)
    assert chrono["baseline"] == pytest.approx(1.0 / 6.0)
    assert chrono["wall_time_s"] == pytest.approx(1.5)


def test_copy_rows_have_no_crossing() -> None:
    figure = FigureSpec(TaskName.COPY, 50)
    result = _result(figure, {CHRONO: [[2.0, 1.0]], CONST: [[1.5, 1.2]]})
    frame = summarize([result])
    assert frame["first_crossing"].isna().all()


def test_short_adding_claims_pass_when_chrono_is_faster() -> None:
    figure = FigureSpec(TaskName.ADDING, 50)
    result = _result(
        figure,
        {CHRONO: [_drop(0.2, 1000, 5000)] * 3, CONST: [_drop(0.2, 4000, 5000)] * 3},
    )
    checks = evaluate_claims([result])
    assert len(checks) == 3
    assert all(check.passed for check in checks)


def test_short_adding_claims_fail_when_const_is_slow() -> None:
    figure = FigureSpec(TaskName.ADDING, 50)
    result = _result(figure, {CHRONO: [_drop(0.2, 3000, 5000)] * 3, CONST: [[0.2] * 5000] * 3})
    assert [check.passed for check in evaluate_claims([result])] == [False, False, True]


def test_long_adding_claims() -> None:
    figure = FigureSpec(TaskName.ADDING, 250)
    result = _result(figure, {CHRONO: [[0.01] * 600] * 3, CONST: [[0.17] * 600] * 3})
    checks = evaluate_claims([result])
    assert [check.passed for check in checks] == [True, True]


def test_copy_claims_need_early_const_advantage() -> None:
    figure = FigureSpec(TaskName.COPY, 50)
    chrono = [2.0] * 10 + [0.1] * 10
    const = [1.5] * 10 + [1.0] * 10
    checks = evaluate_claims([_result(figure, {CHRONO: [chrono], CONST: [const]})])
    assert [check.passed for check in checks] == [True, True]


def test_figures_without_both_inits_are_skipped() -> None:
    figure = FigureSpec(TaskName.ADDING, 50)
    assert evaluate_claims([_result(figure, {CHRONO: [[0.2, 0.1]]})]) == []
