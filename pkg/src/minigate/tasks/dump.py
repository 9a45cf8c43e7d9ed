"""批次的纯文本导出与读取，供 gen 命令检查与金标文件测试使用。

格式（每个样本一个块）：

    # minigate batch v1
    # task=<adding|copy> size=<n> seed=<s> batch=<i> samples=<B> steps=<T>
    ## sample <i>
    values <T 个实数>          （adding）
    mask <T 个 0/1>            （adding）
    target <实数>              （adding）
    input <T 个符号>           （copy）
    target <T 个符号>          （copy）

实数以 17 位有效数字写出，读取后逐位一致。"""

from __future__ import annotations

from pathlib import Path
from typing import Dict, List, Optional, TextIO, Tuple

import numpy as np

from minigate.common import ParseError

from .adding import batch_from_arrays
from .copying import batch_from_streams, copy_streams
from .models import COPY_RECALL, Batch, TaskName

MAGIC = "# minigate batch v1"


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def dump_batch(batch: Batch, stream: TextIO) -> None:
    meta = batch.meta
    stream.write(f"{MAGIC}\n")
    stream.write(
        f"# task={meta.task.value} size={meta.size} seed={meta.seed} batch={meta.index} "
        f"samples={batch.batch_size} steps={batch.steps}\n"
    )
    inputs = batch.inputs_array()  # T×D×B
    for sample in range(batch.batch_size):
        stream.write(f"## sample {sample}\n")
        if meta.task is TaskName.ADDING:
            values = inputs[:, 0, sample]
            mask = inputs[:, 1, sample]
            stream.write("values " + " ".join(_fmt(v) for v in values) + "\n")
            stream.write("mask " + " ".join(str(int(m)) for m in mask) + "\n")
            stream.write(f"target {_fmt(float(batch.targets[0, sample]))}\n")
        else:
            symbols = np.argmax(inputs[:, :, sample], axis=1)
            stream.write("input " + " ".join(str(int(s)) for s in symbols) + "\n")
            stream.write("target " + " ".join(str(int(t)) for t in batch.targets[:, sample]) + "\n")


def _parse_header(line: str, path: str, lineno: int) -> Dict[str, str]:
    if not line.startswith("# "):
        raise ParseError("缺少批次头部", path=path, line=lineno)
    fields: Dict[str, str] = {}
    for token in line[2:].split():
        key, sep, value = token.partition("=")
        if not sep:
            raise ParseError(f"头部字段格式错误：{token!r}", path=path, line=lineno)
        fields[key] = value
    for key in ("task", "size", "seed", "samples", "steps"):
        if key not in fields:
            raise ParseError(f"头部缺少字段 {key}", path=path, line=lineno)
    return fields


def _numbers(line: str, keyword: str, cast: type, expected: Optional[int], path: str, lineno: int) -> List:
    head, _, rest = line.partition(" ")
    if head != keyword:
        raise ParseError(f"期望以 {keyword!r} 开头", path=path, line=lineno)
    try:
        values = [cast(token) for token in rest.split()]
    except ValueError as exc:
        raise ParseError(f"数值无法解析：{exc}", path=path, line=lineno) from exc
    if expected is not None and len(values) != expected:
        raise ParseError(f"期望 {expected} 个数值，实际 {len(values)} 个", path=path, line=lineno)
    return values


def load_batch(path: Path | str) -> Batch:
    """读取 dump_batch 写出的文件并还原批次。"""

    source = str(path)
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0].strip() != MAGIC:
        raise ParseError("不是 minigate 批次文件", path=source, line=1)
    if len(lines) < 2:
        raise ParseError("缺少批次头部", path=source, line=2)
    header = _parse_header(lines[1], source, 2)
    try:
        task = TaskName(header["task"])
        size, seed = int(header["size"]), int(header["seed"])
        samples, steps = int(header["samples"]), int(header["steps"])
        index = int(header.get("batch", "0"))
    except ValueError as exc:
        raise ParseError(f"头部字段无效：{exc}", path=source, line=2) from exc

    per_sample = 4 if task is TaskName.ADDING else 3
    body = lines[2:]
    if len(body) != samples * per_sample:
        raise ParseError(
            f"期望 {samples * per_sample} 行样本数据，实际 {len(body)} 行", path=source, line=len(lines)
        )

    rows: List[Tuple[List, ...]] = []
    for sample in range(samples):
        base = 2 + sample * per_sample
        block = lines[base : base + per_sample]
        if block[0].strip() != f"## sample {sample}":
            raise ParseError(f"期望样本块 {sample}", path=source, line=base + 1)
        if task is TaskName.ADDING:
            values = _numbers(block[1], "values", float, steps, source, base + 2)
            mask = _numbers(block[2], "mask", int, steps, source, base + 3)
            _numbers(block[3], "target", float, 1, source, base + 4)
            if sum(mask) != 2:
                raise ParseError("掩码必须恰有两个 1", path=source, line=base + 3)
            rows.append((values, mask))
        else:
            inputs = _numbers(block[1], "input", int, steps, source, base + 2)
            _numbers(block[2], "target", int, steps, source, base + 3)
            rows.append((inputs,))

    if task is TaskName.ADDING:
        values_arr = np.array([r[0] for r in rows], dtype=np.float64)
        mask_arr = np.array([r[1] for r in rows], dtype=np.float64)
        return batch_from_arrays(values_arr, mask_arr, seed=seed, index=index)
    symbols = np.array([r[0][:COPY_RECALL] for r in rows], dtype=np.int64)
    inputs_arr, targets_arr = copy_streams(symbols, size)
    for sample, row in enumerate(rows):
        if list(inputs_arr[sample]) != row[0]:
            raise ParseError("输入符号流不符合复制任务布局", path=source, line=2 + sample * per_sample + 2)
    return batch_from_streams(inputs_arr, targets_arr, t_param=size, seed=seed, index=index)


__all__ = ["MAGIC", "dump_batch", "load_batch"]
