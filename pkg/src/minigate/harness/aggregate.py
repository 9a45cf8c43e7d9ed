"""多种子损失曲线聚合：逐点均值与变化带。"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import numpy.typing as npt
import pandas as pd

from minigate.common import ArgumentError, ShapeError

from .config import BandMode
from .trainer import RunLog


@dataclass
class AggregatedCurve:
    iterations: npt.NDArray[np.int64]
    mean: npt.NDArray[np.float64]
    lo: npt.NDArray[np.float64]
    hi: npt.NDArray[np.float64]
    n_seeds: int

    def __post_init__(self) -> None:
        self.iterations = np.asarray(self.iterations, dtype=np.int64)
        self.mean = np.asarray(self.mean, dtype=np.float64)
        self.lo = np.asarray(self.lo, dtype=np.float64)
        self.hi = np.asarray(self.hi, dtype=np.float64)
        lengths = {len(self.iterations), len(self.mean), len(self.lo), len(self.hi)}
        if len(lengths) != 1:
            raise ShapeError(f"曲线各序列长度不一致：{sorted(lengths)}")
        if np.any(self.lo > self.mean) or np.any(self.mean > self.hi):
            raise ArgumentError("曲线必须逐点满足 lo ≤ mean ≤ hi")

    def __len__(self) -> int:
        return len(self.iterations)

    @classmethod
    def empty(cls) -> AggregatedCurve:
        nothing = np.array([], dtype=np.float64)
        return cls(iterations=np.array([], dtype=np.int64), mean=nothing, lo=nothing, hi=nothing, n_seeds=0)

    def first_crossing(self, threshold: float) -> Optional[int]:
        """均值曲线首次低于阈值的迭代号。"""

        below = np.nonzero(self.mean < threshold)[0]
        return int(self.iterations[below[0]]) if below.size else None

    def tail_mean(self, count: int = 500) -> float:
        tail = self.mean[-count:]
        return float(tail.mean()) if tail.size else math.nan

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "iteration": pd.Series(self.iterations, dtype="int64"),
                "mean": pd.Series(self.mean, dtype="float64"),
                "lo": pd.Series(self.lo, dtype="float64"),
                "hi": pd.Series(self.hi, dtype="float64"),
            }
        )


def aggregate(logs: Sequence[RunLog], band: BandMode | str = BandMode.MINMAX) -> AggregatedCurve:
    """要求所有日志共享同一迭代网格。"""

    if not logs:
        raise ArgumentError("至少需要一条训练日志")
    grid = logs[0].iterations
    for log in logs[1:]:
        if log.iterations != grid:
            raise ArgumentError(
                f"迭代网格不一致：{log.config.run_name} 与 {logs[0].config.run_name}"
            )
    frame = pd.DataFrame(
        {index: pd.Series(log.values, dtype="float64") for index, log in enumerate(logs)}
    )
    mean = frame.mean(axis=1).to_numpy()
    if BandMode(band) is BandMode.STD:
        spread = frame.std(axis=1, ddof=0).to_numpy()
        lo, hi = mean - spread, mean + spread
    else:
        lo = frame.min(axis=1).to_numpy()
        hi = frame.max(axis=1).to_numpy()
    # 浮点求和可能让均值越过 1 ulp，夹回带内
    mean = np.clip(mean, lo, hi)
    return AggregatedCurve(
        iterations=np.asarray(grid, dtype=np.int64), mean=mean, lo=lo, hi=hi, n_seeds=len(logs)
    )


__all__ = ["BandMode", "AggregatedCurve", "aggregate"]
