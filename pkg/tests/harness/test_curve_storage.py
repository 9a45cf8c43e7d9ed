"""损失曲线 CSV 持久化测试。"""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from minigate.common import ParseError
from minigate.harness import (
    AggregatedCurve,
    RunLog,
    TrainConfig,
    aggregate,
    read_csv,
    read_curve_csv,
    read_run_csv,
    write_csv,
)
from minigate.tensor import RngState


def _random_log(seed: int, count: int = 25) -> RunLog:
    values = RngState(seed).random((count,)) * 3.0
    cfg = TrainConfig.for_task("copy", 50, seed=seed)
    return RunLog(config=cfg, losses=[(i + 1, float(v)) for i, v in enumerate(values)])


def test_raw_round_trip_is_exact(tmp_path: Path) -> None:
    log = _random_log(1)
    path = write_csv(log, tmp_path / "run.csv")
    assert path.read_text(encoding="utf-8").splitlines()[0] == "iteration,loss"
    assert read_run_csv(path) == log.losses


def test_curve_round_trip(tmp_path: Path) -> None:
    curve = aggregate([_random_log(seed) for seed in (1, 2, 3)])
    path = write_csv(curve, tmp_path / "nested" / "curve.csv")
    assert path.read_text(encoding="utf-8").splitlines()[0] == "iteration,mean,lo,hi"
    parsed = read_curve_csv(path, n_seeds=3)
    for name in ("iterations", "mean", "lo", "hi"):
        assert np.allclose(getattr(parsed, name), getattr(curve, name), rtol=0.0, atol=1e-12)
    assert isinstance(read_csv(path), AggregatedCurve)


def test_empty_curve_writes_header_only(tmp_path: Path) -> None:
    path = write_csv(AggregatedCurve.empty(), tmp_path / "empty.csv")
    assert path.read_text(encoding="utf-8").strip() == "iteration,mean,lo,hi"
    assert len(read_curve_csv(path)) == 0


def _write_text(path: Path, text: str) -> Path:
    path.write_text(text, encoding="utf-8")
    return path


@pytest.mark.parametrize(
    "text, line",
    [
        ("iteration,loss\n1,0.5\n2,abc\n", 3),
        ("iteration,loss\n1,0.5\n1,0.4\n", 3),
        ("iteration,loss\n1,0.5\n2\n", 3),
        ("step,loss\n1,0.5\n", 1),
        ("", 1),
    ],
)
def test_malformed_rows_report_line(tmp_path: Path, text: str, line: int) -> None:
    path = _write_text(tmp_path / "bad.csv", text)
    with pytest.raises(ParseError) as excinfo:
        read_run_csv(path)
    assert excinfo.value.line == line


def test_curve_band_violation_is_parse_error(tmp_path: Path) -> None:
    path = _write_text(tmp_path / "band.csv", "iteration,mean,lo,hi\n1,0.5,0.4,0.6\n2,0.9,0.1,0.2\n")
    with pytest.raises(ParseError) as excinfo:
        read_curve_csv(path)
    assert excinfo.value.line == 3


def test_unknown_header(tmp_path: Path) -> None:
    path = _write_text(tmp_path / "x.csv", "a,b\n1,2\n")
    with pytest.raises(ParseError):
        read_csv(path)
