"""MGU 参数容器与初始化规格定义。"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterator, Mapping, Tuple

import numpy as np

from minigate.common import ArgumentError, ShapeError
from minigate.tensor import Matrix

PARAMETER_NAMES: Tuple[str, ...] = ("wf_h", "wf_x", "bf", "w_h", "w_x", "b", "v", "c")


class InitKind(str, Enum):
    """门偏置初始化方式，取值即命令行写法。"""

    CHRONO_POSITIVE = "chrono"
    CHRONO_NEGATIVE = "chrono-neg"
    CONSTANT_ONE = "const"

    @property
    def label(self) -> str:
        return _INIT_LABELS[self]


_INIT_LABELS = {
    InitKind.CHRONO_POSITIVE: "MGU (Chrono)",
    InitKind.CHRONO_NEGATIVE: "MGU (Chrono, neg.)",
    InitKind.CONSTANT_ONE: "MGU (Const.)",
}


@dataclass(frozen=True)
class InitSpec:
    """门偏置初始化规格；t_max 仅对 chrono 两种方式生效。"""

    kind: InitKind
    t_max: int = 2

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", InitKind(self.kind))
        if self.is_chrono and int(self.t_max) < 2:
            raise ArgumentError(f"chrono 初始化要求 t_max ≥ 2，当前为 {self.t_max}")

    @property
    def is_chrono(self) -> bool:
        return self.kind in (InitKind.CHRONO_POSITIVE, InitKind.CHRONO_NEGATIVE)

    @classmethod
    def for_sequence(cls, kind: InitKind | str, sequence_length: int) -> InitSpec:
        """按序列总长度取 t_max：依赖范围覆盖整条序列。"""

        return cls(kind=InitKind(kind), t_max=max(int(sequence_length), 2))


@dataclass
class MguParams:
    """MGU 单元参数：门 (wf_h, wf_x, bf) 与候选状态 (w_h, w_x, b)。"""

    wf_h: Matrix
    wf_x: Matrix
    bf: Matrix
    w_h: Matrix
    w_x: Matrix
    b: Matrix

    def __post_init__(self) -> None:
        h, d = self.hidden_size, self.input_size
        expected = {
            "wf_h": (h, h),
            "wf_x": (h, d),
            "bf": (h, 1),
            "w_h": (h, h),
            "w_x": (h, d),
            "b": (h, 1),
        }
        for name, shape in expected.items():
            actual = getattr(self, name).shape
            if actual != shape:
                raise ShapeError(f"MGU 参数 {name} 形状应为 {shape}，实际为 {actual}")

    @property
    def hidden_size(self) -> int:
        return int(self.wf_h.shape[0])

    @property
    def input_size(self) -> int:
        return int(self.wf_x.shape[1])


@dataclass
class ReadoutParams:
    """读出层 V·h + c。"""

    v: Matrix
    c: Matrix

    def __post_init__(self) -> None:
        if self.c.shape != (self.output_size, 1):
            raise ShapeError(f"读出偏置形状应为 {(self.output_size, 1)}，实际为 {self.c.shape}")

    @property
    def output_size(self) -> int:
        return int(self.v.shape[0])

    @property
    def hidden_size(self) -> int:
        return int(self.v.shape[1])


@dataclass
class Model:
    """全部可学习参数：MGU 单元与读出层。"""

    cell: MguParams
    readout: ReadoutParams

    def __post_init__(self) -> None:
        if self.readout.hidden_size != self.cell.hidden_size:
            raise ShapeError(
                f"读出层隐藏维度 {self.readout.hidden_size} 与 MGU 隐藏维度 {self.cell.hidden_size} 不一致"
            )

    @property
    def dims(self) -> Tuple[int, int, int]:
        """(H, D, O)。"""

        return self.cell.hidden_size, self.cell.input_size, self.readout.output_size

    @property
    def num_parameters(self) -> int:
        return sum(int(m.size) for m in self.parameters().values())

    def parameters(self) -> Dict[str, Matrix]:
        """按固定顺序返回参数名到矩阵的映射（引用，非拷贝）。"""

        c, r = self.cell, self.readout
        return {
            "wf_h": c.wf_h,
            "wf_x": c.wf_x,
            "bf": c.bf,
            "w_h": c.w_h,
            "w_x": c.w_x,
            "b": c.b,
            "v": r.v,
            "c": r.c,
        }

    def __iter__(self) -> Iterator[Tuple[str, Matrix]]:
        return iter(self.parameters().items())

    @classmethod
    def from_parameters(cls, params: Mapping[str, Matrix]) -> Model:
        missing = [name for name in PARAMETER_NAMES if name not in params]
        if missing:
            raise ArgumentError(f"缺少参数：{missing}")
        cell = MguParams(**{name: params[name] for name in PARAMETER_NAMES[:6]})
        readout = ReadoutParams(v=params["v"], c=params["c"])
        return cls(cell=cell, readout=readout)

    def copy(self) -> Model:
        return Model.from_parameters({name: m.copy() for name, m in self})

    def equals(self, other: Model) -> bool:
        """逐元素精确相等。"""

        return all(np.array_equal(a, b) for (_, a), (_, b) in zip(self, other))


@dataclass(frozen=True)
class StepCache:
    """单个时间步的前向中间量，供 BPTT 使用。形状均为 (·)×B。"""

    x_t: Matrix
    h_prev: Matrix
    f_t: Matrix
    h_tilde: Matrix
    h_t: Matrix


__all__ = [
    "PARAMETER_NAMES",
    "InitKind",
    "InitSpec",
    "MguParams",
    "ReadoutParams",
    "Model",
    "StepCache",
]
