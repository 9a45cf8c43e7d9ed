"""收敛摘要与结论核对。

对每张图、每种初始化方式汇总：最后 500 个记录点的平均损失、
均值曲线首次低于阈值的迭代号、达到阈值的种子数与无记忆基线。"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from minigate.common import get_logger
from minigate.mgu import InitKind
from minigate.tasks import TaskName, baseline_loss

from .aggregate import AggregatedCurve
from .experiment import FigureSpec
from .trainer import RunLog

_LOGGER = get_logger("harness.summary")

ADDING_THRESHOLD = 0.01
FINAL_WINDOW = 500
COPY_FINAL_WINDOW = 100
EARLY_WINDOW = 1000

SUMMARY_COLUMNS = (
    "figure",
    "init",
    "n_seeds",
    "final_mean",
    "final_seed_min",
    "final_seed_max",
    "first_crossing",
    "seeds_crossed",
    "baseline",
    "wall_time_s",
)


@dataclass
class FigureResult:
    """一张图的全部训练日志与聚合曲线，按初始化方式索引。"""

    figure: FigureSpec
    logs: Dict[InitKind, List[RunLog]] = field(default_factory=dict)
    curves: Dict[InitKind, AggregatedCurve] = field(default_factory=dict)


@dataclass(frozen=True)
class ClaimCheck:
    name: str
    passed: bool
    detail: str


def _majority(count: int, total: int) -> bool:
    return total > 0 and count >= total // 2 + 1


def _crossing_threshold(figure: FigureSpec) -> Optional[float]:
    return ADDING_THRESHOLD if figure.task is TaskName.ADDING else None


def summarize(results: Sequence[FigureResult]) -> pd.DataFrame:
    rows = []
    for result in results:
        threshold = _crossing_threshold(result.figure)
        for init, curve in result.curves.items():
            logs = result.logs.get(init, [])
            seed_finals = [log.tail_mean(FINAL_WINDOW) for log in logs]
            crossing = curve.first_crossing(threshold) if threshold is not None else None
            crossed = (
                sum(1 for log in logs if log.first_crossing(threshold) is not None)
                if threshold is not None
                else None
            )
            rows.append(
                {
                    "figure": result.figure.name,
                    "init": init.value,
                    "n_seeds": curve.n_seeds,
                    "final_mean": curve.tail_mean(FINAL_WINDOW),
                    "final_seed_min": min(seed_finals) if seed_finals else math.nan,
                    "final_seed_max": max(seed_finals) if seed_finals else math.nan,
                    "first_crossing": crossing,
                    "seeds_crossed": crossed,
                    "baseline": baseline_loss(result.figure.task, result.figure.size),
                    "wall_time_s": float(np.mean([log.wall_time_s for log in logs])) if logs else math.nan,
                }
            )
    frame = pd.DataFrame(rows, columns=list(SUMMARY_COLUMNS))
    frame["first_crossing"] = frame["first_crossing"].astype("Int64")
    frame["seeds_crossed"] = frame["seeds_crossed"].astype("Int64")
    return frame


def _crossed_by(logs: Sequence[RunLog], deadline: int) -> int:
    count = 0
    for log in logs:
        crossing = log.first_crossing(ADDING_THRESHOLD)
        if crossing is not None and crossing <= deadline:
            count += 1
    return count


def _adding_short(result: FigureResult) -> List[ClaimCheck]:
    chrono_logs = result.logs[InitKind.CHRONO_POSITIVE]
    const_logs = result.logs[InitKind.CONSTANT_ONE]
    chrono_count = _crossed_by(chrono_logs, 2500)
    const_count = _crossed_by(const_logs, 4500)
    chrono_cross = result.curves[InitKind.CHRONO_POSITIVE].first_crossing(ADDING_THRESHOLD)
    const_cross = result.curves[InitKind.CONSTANT_ONE].first_crossing(ADDING_THRESHOLD)
    precedes = chrono_cross is not None and (const_cross is None or chrono_cross < const_cross)
    name = result.figure.name
    return [
        ClaimCheck(
            f"{name}: chrono 在 2500 次内 MSE < 0.01",
            _majority(chrono_count, len(chrono_logs)),
            f"{chrono_count}/{len(chrono_logs)} 个种子达标",
        ),
        ClaimCheck(
            f"{name}: const 在 4500 次内 MSE < 0.01",
            _majority(const_count, len(const_logs)),
            f"{const_count}/{len(const_logs)} 个种子达标",
        ),
        ClaimCheck(
            f"{name}: chrono 均值曲线先于 const 越过 0.01",
            precedes,
            f"chrono={chrono_cross} const={const_cross}",
        ),
    ]


def _adding_long(result: FigureResult) -> List[ClaimCheck]:
    const_finals = [log.tail_mean(FINAL_WINDOW) for log in result.logs[InitKind.CONSTANT_ONE]]
    chrono_finals = [log.tail_mean(FINAL_WINDOW) for log in result.logs[InitKind.CHRONO_POSITIVE]]
    name = result.figure.name
    return [
        ClaimCheck(
            f"{name}: const 末段 MSE ≥ 0.15",
            _majority(sum(value >= 0.15 for value in const_finals), len(const_finals)),
            "末段 MSE=" + ", ".join(f"{value:.4f}" for value in const_finals),
        ),
        ClaimCheck(
            f"{name}: chrono 末段 MSE < 0.05",
            _majority(sum(value < 0.05 for value in chrono_finals), len(chrono_finals)),
            "末段 MSE=" + ", ".join(f"{value:.4f}" for value in chrono_finals),
        ),
    ]


def _copy(result: FigureResult) -> List[ClaimCheck]:
    chrono = result.curves[InitKind.CHRONO_POSITIVE]
    const = result.curves[InitKind.CONSTANT_ONE]
    chrono_final = chrono.tail_mean(COPY_FINAL_WINDOW)
    const_final = const.tail_mean(COPY_FINAL_WINDOW)
    early = [
        int(iteration)
        for iteration, a, b in zip(const.iterations, const.mean, chrono.mean)
        if iteration <= EARLY_WINDOW and a <= b
    ]
    name = result.figure.name
    return [
        ClaimCheck(
            f"{name}: chrono 最终交叉熵低于 const",
            chrono_final < const_final,
            f"chrono={chrono_final:.4f} const={const_final:.4f}",
        ),
        ClaimCheck(
            f"{name}: const 在前 {EARLY_WINDOW} 次迭代内曾不劣于 chrono",
            bool(early),
            f"首个满足的迭代={early[0] if early else None}",
        ),
    ]


def evaluate_claims(results: Sequence[FigureResult]) -> List[ClaimCheck]:
    """核对收敛结论；缺少 chrono 或 const 的图跳过。"""

    checks: List[ClaimCheck] = []
    required = (InitKind.CHRONO_POSITIVE, InitKind.CONSTANT_ONE)
    for result in results:
        if not all(kind in result.curves and result.logs.get(kind) for kind in required):
            continue
        if result.figure.task is TaskName.COPY:
            checks.extend(_copy(result))
        elif result.figure.size <= 50:
            checks.extend(_adding_short(result))
        else:
            checks.extend(_adding_long(result))
    for check in checks:
        _LOGGER.info("结论核对", extra={"claim": check.name, "passed": check.passed, "detail": check.detail})
    return checks


__all__ = [
    "ADDING_THRESHOLD",
    "SUMMARY_COLUMNS",
    "FigureResult",
    "ClaimCheck",
    "summarize",
    "evaluate_claims",
]
