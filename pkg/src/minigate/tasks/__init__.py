"""合成序列基准：加法任务与复制任务。"""

from __future__ import annotations

from minigate.tensor import RngState

from .adding import adding_mask, gen_adding
from .baselines import baseline_loss, empirical_constant_mse
from .copying import gen_copy
from .dump import dump_batch, load_batch
from .models import (
    Batch,
    BatchMeta,
    MaskMode,
    TaskName,
    loss_kind_for,
    sequence_length,
    task_dims,
)


def generate(
    task: TaskName | str,
    size: int,
    batch: int,
    rng: RngState,
    *,
    mask_mode: MaskMode | str = MaskMode.HALVES,
    index: int = 0,
) -> Batch:
    """按任务名分派到对应生成器；index 记录该批次在数据流上的序号。"""

    if TaskName.parse(task) is TaskName.ADDING:
        return gen_adding(size, batch, rng, mask_mode=mask_mode, index=index)
    return gen_copy(size, batch, rng, index=index)


__all__ = [
    "Batch",
    "BatchMeta",
    "MaskMode",
    "TaskName",
    "task_dims",
    "sequence_length",
    "loss_kind_for",
    "gen_adding",
    "adding_mask",
    "gen_copy",
    "generate",
    "baseline_loss",
    "empirical_constant_mse",
    "dump_batch",
    "load_batch",
]
