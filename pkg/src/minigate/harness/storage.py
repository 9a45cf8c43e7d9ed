"""损失曲线的 CSV 持久化。

原始曲线表头 `iteration,loss`，聚合曲线表头 `iteration,mean,lo,hi`；
浮点数以 17 位有效数字写出，读回后逐位一致。"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Callable, Dict, List, Sequence, Tuple, TypeVar

import pandas as pd

from minigate.common import ParseError, PersistenceError, ensure_parent, get_logger

from .aggregate import AggregatedCurve
from .trainer import RunLog

_LOGGER = get_logger("harness.storage")

RUN_COLUMNS: Tuple[str, ...] = ("iteration", "loss")
CURVE_COLUMNS: Tuple[str, ...] = ("iteration", "mean", "lo", "hi")
FLOAT_FORMAT = "%.17g"

_LINE_PATTERN = re.compile(r"line (\d+)")

T = TypeVar("T", int, float)


def write_csv(curve: AggregatedCurve | RunLog, path: Path | str) -> Path:
    """写出原始或聚合曲线；空曲线只写表头。"""

    frame = curve.to_frame()
    target = ensure_parent(path)
    try:
        frame.to_csv(target, index=False, float_format=FLOAT_FORMAT)
    except OSError as exc:
        raise PersistenceError(f"写入 CSV 失败：{exc}", path=target) from exc
    _LOGGER.info("已写入曲线", extra={"path": str(target), "rows": len(frame)})
    return target


def _read_table(path: Path | str, columns: Sequence[str]) -> pd.DataFrame:
    source = str(path)
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, skip_blank_lines=False)
    except FileNotFoundError as exc:
        raise PersistenceError("文件不存在", path=source) from exc
    except pd.errors.EmptyDataError as exc:
        raise ParseError("文件为空，缺少表头", path=source, line=1) from exc
    except pd.errors.ParserError as exc:
        match = _LINE_PATTERN.search(str(exc))
        line = int(match.group(1)) if match else None
        raise ParseError(f"CSV 结构错误：{exc}", path=source, line=line) from exc
    if tuple(frame.columns) != tuple(columns):
        raise ParseError(
            f"表头应为 {','.join(columns)}，实际为 {','.join(map(str, frame.columns))}",
            path=source,
            line=1,
        )
    return frame


def _parse_column(frame: pd.DataFrame, column: str, cast: Callable[[str], T], source: str) -> List[T]:
    parsed: List[T] = []
    for offset, raw in enumerate(frame[column].tolist()):
        line = offset + 2  # 第 1 行为表头
        if not isinstance(raw, str) or not raw.strip():
            raise ParseError(f"字段 {column} 缺失", path=source, line=line)
        try:
            parsed.append(cast(raw.strip()))
        except ValueError as exc:
            raise ParseError(f"字段 {column} 无法解析：{raw!r}", path=source, line=line) from exc
    return parsed


def _parse_frame(path: Path | str, columns: Sequence[str]) -> Dict[str, list]:
    source = str(path)
    frame = _read_table(path, columns)
    parsed: Dict[str, list] = {"iteration": _parse_column(frame, "iteration", int, source)}
    for column in columns[1:]:
        parsed[column] = _parse_column(frame, column, float, source)
    iterations = parsed["iteration"]
    for offset in range(1, len(iterations)):
        if iterations[offset] <= iterations[offset - 1]:
            raise ParseError("迭代号必须严格递增", path=source, line=offset + 2)
    return parsed


def read_run_csv(path: Path | str) -> List[Tuple[int, float]]:
    """读取原始曲线，返回 (iteration, loss) 列表。"""

    parsed = _parse_frame(path, RUN_COLUMNS)
    return list(zip(parsed["iteration"], parsed["loss"]))


def read_curve_csv(path: Path | str, *, n_seeds: int = 0) -> AggregatedCurve:
    """读取聚合曲线；种子数不在文件中保存，由调用方提供。"""

    parsed = _parse_frame(path, CURVE_COLUMNS)
    for offset, (lo, mean, hi) in enumerate(zip(parsed["lo"], parsed["mean"], parsed["hi"])):
        if not lo <= mean <= hi:
            raise ParseError("必须满足 lo ≤ mean ≤ hi", path=str(path), line=offset + 2)
    return AggregatedCurve(
        iterations=parsed["iteration"],
        mean=parsed["mean"],
        lo=parsed["lo"],
        hi=parsed["hi"],
        n_seeds=n_seeds,
    )


def read_csv(path: Path | str, *, n_seeds: int = 0) -> List[Tuple[int, float]] | AggregatedCurve:
    """按表头识别原始曲线或聚合曲线。"""

    try:
        with open(path, encoding="utf-8") as handle:
            header = tuple(handle.readline().strip().split(","))
    except OSError as exc:
        raise PersistenceError(f"读取 CSV 失败：{exc}", path=path) from exc
    if header == RUN_COLUMNS:
        return read_run_csv(path)
    if header == CURVE_COLUMNS:
        return read_curve_csv(path, n_seeds=n_seeds)
    raise ParseError("无法识别的 CSV 表头", path=str(path), line=1)


__all__ = [
    "RUN_COLUMNS",
    "CURVE_COLUMNS",
    "write_csv",
    "read_csv",
    "read_run_csv",
    "read_curve_csv",
]
