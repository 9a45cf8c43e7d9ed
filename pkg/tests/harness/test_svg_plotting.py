"""SVG 与 HTML 绘图测试。"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from pathlib import Path

import pytest

from minigate.common import ArgumentError
from minigate.harness import AggregatedCurve, AxisLabel, emit_html, emit_svg

_NS = "{http://www.w3.org/2000/svg}"


def _curve(offset: float) -> AggregatedCurve:
    mean = [1.0 - 0.1 * i + offset for i in range(5)]
    return AggregatedCurve(
        iterations=list(range(1, 6)),
        mean=mean,
        lo=[value - 0.05 for value in mean],
        hi=[value + 0.05 for value in mean],
        n_seeds=3,
    )


def _count(path: Path, tag: str) -> int:
    return len(ET.parse(path).getroot().findall(f".//{_NS}{tag}"))


def test_two_methods_give_two_lines_and_two_bands(tmp_path: Path) -> None:
    path = emit_svg(
        [("MGU (Chrono)", _curve(0.0)), ("MGU (Const.)", _curve(0.2))], AxisLabel.MSE, tmp_path / "fig.svg"
    )
    assert _count(path, "polyline") == 2
    assert _count(path, "polygon") == 2
    text = path.read_text(encoding="utf-8")
    assert "Mean Squared Error (MSE)" in text
    assert "iterations" in text
    assert "MGU (Const.)" in text


def test_rendering_is_byte_identical(tmp_path: Path) -> None:
    curves = [("a", _curve(0.0))]
    first = emit_svg(curves, "xent", tmp_path / "a.svg").read_bytes()
    second = emit_svg(curves, "xent", tmp_path / "b.svg").read_bytes()
    assert first == second
    assert b"Softmax Cross Entropy" in first


def test_empty_curves_are_skipped(tmp_path: Path) -> None:
    path = emit_svg([("empty", AggregatedCurve.empty()), ("a", _curve(0.0))], "mse", tmp_path / "c.svg")
    assert _count(path, "polyline") == 1


def test_axis_label_parsing() -> None:
    assert AxisLabel.parse("mse") is AxisLabel.MSE
    assert AxisLabel.parse("Softmax Cross Entropy") is AxisLabel.XENT
    with pytest.raises(ArgumentError):
        AxisLabel.parse("accuracy")


def test_html_contains_traces(tmp_path: Path) -> None:
    path = emit_html([("MGU (Chrono)", _curve(0.0))], "mse", tmp_path / "fig.html")
    text = path.read_text(encoding="utf-8")
    assert "MGU (Chrono)" in text
    assert "toself" in text
