"""模型参数的文本检查点。

    minigate-checkpoint v1 H=<h> D=<d> O=<o>
    wf_h <rows> <cols>
    <rows 行，每行 cols 个 17 位有效数字的实数>
    wf_x <rows> <cols>
    ...

参数按 wf_h, wf_x, bf, w_h, w_x, b, v, c 顺序写出，读回后逐位一致。"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from minigate.common import ParseError, PersistenceError, ensure_parent, get_logger
from minigate.mgu import PARAMETER_NAMES, Model
from minigate.tensor import Matrix

_LOGGER = get_logger("harness.checkpoint")

MAGIC = "minigate-checkpoint v1"
_HEADER = re.compile(r"^minigate-checkpoint v1 H=(\d+) D=(\d+) O=(\d+)$")


def _format_row(row: np.ndarray) -> str:
    return " ".join(f"{value:.17g}" for value in row)


def save_checkpoint(model: Model, path: Path | str) -> Path:
    h, d, o = model.dims
    lines = [f"{MAGIC} H={h} D={d} O={o}"]
    for name, matrix in model:
        rows, cols = matrix.shape
        lines.append(f"{name} {rows} {cols}")
        lines.extend(_format_row(row) for row in matrix)
    target = ensure_parent(path)
    try:
        target.write_text("\n".join(lines) + "\n", encoding="utf-8")
    except OSError as exc:
        raise PersistenceError(f"写入检查点失败：{exc}", path=target) from exc
    _LOGGER.info("已保存检查点", extra={"path": str(target), "parameters": model.num_parameters})
    return target


def _expected_shapes(h: int, d: int, o: int) -> Dict[str, Tuple[int, int]]:
    return {
        "wf_h": (h, h),
        "wf_x": (h, d),
        "bf": (h, 1),
        "w_h": (h, h),
        "w_x": (h, d),
        "b": (h, 1),
        "v": (o, h),
        "c": (o, 1),
    }


class _Lines:
    """带 1 起始行号的逐行读取器。"""

    def __init__(self, text: str, path: str) -> None:
        self._lines: Iterator[Tuple[int, str]] = enumerate(text.splitlines(), start=1)
        self.path = path
        self.lineno = 0

    def next(self, what: str) -> str:
        try:
            self.lineno, line = next(self._lines)
        except StopIteration:
            raise ParseError(f"文件提前结束，缺少{what}", path=self.path, line=self.lineno + 1) from None
        return line.strip()

    def error(self, message: str) -> ParseError:
        return ParseError(message, path=self.path, line=self.lineno)

    def rest(self) -> List[Tuple[int, str]]:
        return [(lineno, line) for lineno, line in self._lines if line.strip()]


def load_checkpoint(
    path: Path | str, *, expected_dims: Optional[Tuple[int, int, int]] = None
) -> Model:
    """读取检查点；给定 expected_dims 时校验头部维度。"""

    source = str(path)
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise PersistenceError(f"读取检查点失败：{exc}", path=source) from exc

    reader = _Lines(text, source)
    match = _HEADER.match(reader.next("头部"))
    if match is None:
        raise reader.error(f"头部应形如 '{MAGIC} H=<h> D=<d> O=<o>'")
    dims = (int(match.group(1)), int(match.group(2)), int(match.group(3)))
    if expected_dims is not None and tuple(expected_dims) != dims:
        raise reader.error(f"维度 {dims} 与期望的 {tuple(expected_dims)} 不一致")

    shapes = _expected_shapes(*dims)
    params: Dict[str, Matrix] = {}
    for name in PARAMETER_NAMES:
        fields = reader.next(f"参数 {name}").split()
        if len(fields) != 3 or fields[0] != name:
            raise reader.error(f"应为参数段 '{name} <rows> <cols>'")
        try:
            shape = (int(fields[1]), int(fields[2]))
        except ValueError:
            raise reader.error(f"参数 {name} 的形状无法解析") from None
        if shape != shapes[name]:
            raise reader.error(f"参数 {name} 形状应为 {shapes[name]}，实际为 {shape}")
        rows: List[List[float]] = []
        for _ in range(shape[0]):
            tokens = reader.next(f"参数 {name} 的数据行").split()
            if len(tokens) != shape[1]:
                raise reader.error(f"参数 {name} 每行应有 {shape[1]} 个数，实际为 {len(tokens)}")
            try:
                rows.append([float(token) for token in tokens])
            except ValueError:
                raise reader.error(f"参数 {name} 含无法解析的数值") from None
        params[name] = np.array(rows, dtype=np.float64).reshape(shape)

    trailing = reader.rest()
    if trailing:
        raise ParseError("参数段之后存在多余内容", path=source, line=trailing[0][0])
    return Model.from_parameters(params)


__all__ = ["save_checkpoint", "load_checkpoint"]
