"""损失曲线图：静态 SVG 与交互式 HTML。

SVG 使用 xml.etree 手工构造：每条曲线一个变化带 <polygon> 与一个均值 <polyline>，
坐标保留两位小数，相同输入得到逐字节相同的文件。"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from enum import Enum
from pathlib import Path
from typing import List, Sequence, Tuple

import numpy as np
import plotly.graph_objects as go

from minigate.common import ArgumentError, PersistenceError, ensure_parent, get_logger

from .aggregate import AggregatedCurve

_LOGGER = get_logger("harness.plotting")

WIDTH = 720
HEIGHT = 440
MARGIN_LEFT = 80
MARGIN_RIGHT = 180
MARGIN_TOP = 30
MARGIN_BOTTOM = 60
TICKS = 5
PALETTE = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")

LabeledCurve = Tuple[str, AggregatedCurve]


class AxisLabel(str, Enum):
    MSE = "Mean Squared Error (MSE)"
    XENT = "Softmax Cross Entropy"

    @classmethod
    def parse(cls, value: str | AxisLabel) -> AxisLabel:
        if isinstance(value, AxisLabel):
            return value
        aliases = {"mse": cls.MSE, "xent": cls.XENT}
        try:
            return aliases.get(str(value).lower()) or cls(value)
        except ValueError as exc:
            raise ArgumentError(f"未知坐标轴：{value!r}，可选 mse / xent") from exc


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _nice_ticks(lo: float, hi: float, count: int = TICKS) -> List[float]:
    return [lo + (hi - lo) * index / (count - 1) for index in range(count)]


def _tick_label(value: float) -> str:
    return f"{value:.4g}"


class _Frame:
    """数据坐标到画布坐标的线性映射。"""

    def __init__(self, curves: Sequence[AggregatedCurve]) -> None:
        if curves:
            self.x_min = float(min(c.iterations.min() for c in curves))
            self.x_max = float(max(c.iterations.max() for c in curves))
            self.y_min = float(min(c.lo.min() for c in curves))
            self.y_max = float(max(c.hi.max() for c in curves))
        else:
            self.x_min, self.x_max, self.y_min, self.y_max = 0.0, 1.0, 0.0, 1.0
        if self.x_max <= self.x_min:
            self.x_max = self.x_min + 1.0
        if self.y_max <= self.y_min:
            self.y_max = self.y_min + 1.0
        self.y_min = min(self.y_min, 0.0)
        self.plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
        self.plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def x(self, value: float) -> float:
        return MARGIN_LEFT + (value - self.x_min) / (self.x_max - self.x_min) * self.plot_w

    def y(self, value: float) -> float:
        return MARGIN_TOP + (self.y_max - value) / (self.y_max - self.y_min) * self.plot_h

    def points(self, xs: np.ndarray, ys: np.ndarray) -> str:
        return " ".join(f"{_fmt(self.x(a))},{_fmt(self.y(b))}" for a, b in zip(xs, ys))


def _text(parent: ET.Element, x: float, y: float, content: str, **attrs: str) -> None:
    node = ET.SubElement(parent, "text", {"x": _fmt(x), "y": _fmt(y), **attrs})
    node.text = content


def _axes(svg: ET.Element, frame: _Frame, axis_label: AxisLabel) -> None:
    bottom = MARGIN_TOP + frame.plot_h
    right = MARGIN_LEFT + frame.plot_w
    axes = ET.SubElement(svg, "g", {"class": "axes", "stroke": "#333333", "stroke-width": "1"})
    ET.SubElement(axes, "line", {"x1": _fmt(MARGIN_LEFT), "y1": _fmt(bottom), "x2": _fmt(right), "y2": _fmt(bottom)})
    ET.SubElement(axes, "line", {"x1": _fmt(MARGIN_LEFT), "y1": _fmt(MARGIN_TOP), "x2": _fmt(MARGIN_LEFT), "y2": _fmt(bottom)})

    labels = ET.SubElement(svg, "g", {"class": "labels", "font-family": "sans-serif", "font-size": "12"})
    for value in _nice_ticks(frame.x_min, frame.x_max):
        x = frame.x(value)
        ET.SubElement(axes, "line", {"x1": _fmt(x), "y1": _fmt(bottom), "x2": _fmt(x), "y2": _fmt(bottom + 5)})
        _text(labels, x, bottom + 20, _tick_label(value), **{"text-anchor": "middle"})
    for value in _nice_ticks(frame.y_min, frame.y_max):
        y = frame.y(value)
        ET.SubElement(axes, "line", {"x1": _fmt(MARGIN_LEFT - 5), "y1": _fmt(y), "x2": _fmt(MARGIN_LEFT), "y2": _fmt(y)})
        _text(labels, MARGIN_LEFT - 8, y + 4, _tick_label(value), **{"text-anchor": "end"})

    _text(labels, MARGIN_LEFT + frame.plot_w / 2, HEIGHT - 15, "iterations", **{"text-anchor": "middle"})
    y_mid = MARGIN_TOP + frame.plot_h / 2
    _text(
        labels,
        20,
        y_mid,
        axis_label.value,
        **{"text-anchor": "middle", "transform": f"rotate(-90 20 {_fmt(y_mid)})"},
    )


def render_svg(curves: Sequence[LabeledCurve], axis_label: AxisLabel | str) -> str:
    """返回 SVG 文本；空曲线不绘制。"""

    axis = AxisLabel.parse(axis_label)
    drawable = [(label, curve) for label, curve in curves if len(curve) > 0]
    frame = _Frame([curve for _, curve in drawable])

    svg = ET.Element(
        "svg",
        {
            "xmlns": "http://www.w3.org/2000/svg",
            "width": str(WIDTH),
            "height": str(HEIGHT),
            "viewBox": f"0 0 {WIDTH} {HEIGHT}",
        },
    )
    ET.SubElement(svg, "rect", {"width": str(WIDTH), "height": str(HEIGHT), "fill": "#ffffff"})
    _axes(svg, frame, axis)

    series = ET.SubElement(svg, "g", {"class": "series"})
    legend = ET.SubElement(svg, "g", {"class": "legend", "font-family": "sans-serif", "font-size": "12"})
    for index, (label, curve) in enumerate(drawable):
        color = PALETTE[index % len(PALETTE)]
        band = frame.points(
            np.concatenate([curve.iterations, curve.iterations[::-1]]),
            np.concatenate([curve.lo, curve.hi[::-1]]),
        )
        ET.SubElement(
            series,
            "polygon",
            {"class": "band", "points": band, "fill": color, "fill-opacity": "0.2", "stroke": "none"},
        )
        ET.SubElement(
            series,
            "polyline",
            {
                "class": "mean",
                "points": frame.points(curve.iterations, curve.mean),
                "fill": "none",
                "stroke": color,
                "stroke-width": "1.5",
            },
        )
        y = MARGIN_TOP + 10 + 20 * index
        x = WIDTH - MARGIN_RIGHT + 15
        ET.SubElement(legend, "line", {"x1": _fmt(x), "y1": _fmt(y), "x2": _fmt(x + 20), "y2": _fmt(y), "stroke": color, "stroke-width": "2"})
        _text(legend, x + 26, y + 4, label)

    return ET.tostring(svg, encoding="unicode")


def emit_svg(curves: Sequence[LabeledCurve], axis_label: AxisLabel | str, path: Path | str) -> Path:
    target = ensure_parent(path)
    content = render_svg(curves, axis_label)
    try:
        target.write_text('<?xml version="1.0" encoding="UTF-8"?>\n' + content + "\n", encoding="utf-8")
    except OSError as exc:
        raise PersistenceError(f"写入 SVG 失败：{exc}", path=target) from exc
    _LOGGER.info("已生成 SVG", extra={"path": str(target), "curves": len(curves)})
    return target


def _rgba(color: str, alpha: float) -> str:
    red, green, blue = (int(color[i : i + 2], 16) for i in (1, 3, 5))
    return f"rgba({red},{green},{blue},{alpha})"


def emit_html(curves: Sequence[LabeledCurve], axis_label: AxisLabel | str, path: Path | str) -> Path:
    """交互式 plotly 版本：均值折线与填充变化带。"""

    axis = AxisLabel.parse(axis_label)
    figure = go.Figure()
    for index, (label, curve) in enumerate(c for c in curves if len(c[1]) > 0):
        color = PALETTE[index % len(PALETTE)]
        figure.add_trace(
            go.Scatter(
                x=np.concatenate([curve.iterations, curve.iterations[::-1]]),
                y=np.concatenate([curve.lo, curve.hi[::-1]]),
                fill="toself",
                fillcolor=_rgba(color, 0.2),
                line={"width": 0},
                hoverinfo="skip",
                showlegend=False,
                name=f"{label} band",
            )
        )
        figure.add_trace(
            go.Scatter(x=curve.iterations, y=curve.mean, mode="lines", line={"color": color}, name=label)
        )
    figure.update_layout(
        xaxis_title="iterations",
        yaxis_title=axis.value,
        template="plotly_white",
    )
    target = ensure_parent(path)
    try:
        figure.write_html(str(target), include_plotlyjs="cdn", full_html=True)
    except OSError as exc:
        raise PersistenceError(f"写入 HTML 失败：{exc}", path=target) from exc
    _LOGGER.info("已生成 HTML", extra={"path": str(target), "curves": len(curves)})
    return target



__all__ = ["AxisLabel", "render_svg", "emit_svg", "emit_html"]
