"""训练循环。

每次迭代在线生成新批次，执行前向、损失、BPTT、可选裁剪与参数更新。
运行种子按固定方式拆分为两条子流：spawn(0) 用于参数初始化，spawn(1) 用于任务数据，
因此同一种子下不同初始化方式看到完全相同的数据。"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
import pandas as pd

from minigate.autodiff import Gradients, loss_and_gradients
from minigate.common import NumericError, get_logger
from minigate.mgu import Model, gate_time_constants, init_model
from minigate.optim import AdamState, adam_step, clip_global_norm, sgd_step
from minigate.tasks import generate, task_dims
from minigate.tensor import RngState

from .config import OptimizerName, TrainConfig

_LOGGER = get_logger("harness.trainer")

INIT_STREAM = 0
DATA_STREAM = 1


def derive_streams(seed: int) -> Tuple[RngState, RngState]:
    """返回 (初始化子流, 数据子流)。"""

    root = RngState(seed)
    return root.spawn(INIT_STREAM), root.spawn(DATA_STREAM)


@dataclass
class RunLog:
    """单次带种子训练的损失轨迹。"""

    config: TrainConfig
    losses: List[Tuple[int, float]] = field(default_factory=list)
    wall_time_s: float = 0.0
    clip_events: int = 0
    clip_scales: List[float] = field(default_factory=list, repr=False)
    final_model: Optional[Model] = field(default=None, repr=False, compare=False)

    @property
    def iterations(self) -> List[int]:
        return [iteration for iteration, _ in self.losses]

    @property
    def values(self) -> List[float]:
        return [loss for _, loss in self.losses]

    def first_crossing(self, threshold: float) -> Optional[int]:
        """损失首次低于阈值的迭代号。"""

        for iteration, loss in self.losses:
            if loss < threshold:
                return iteration
        return None

    def tail_mean(self, count: int = 500) -> float:
        """最后 count 个记录点的平均损失。"""

        tail = self.values[-count:]
        return float(np.mean(tail)) if tail else math.nan

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "iteration": pd.Series(self.iterations, dtype="int64"),
                "loss": pd.Series(self.values, dtype="float64"),
            }
        )


def _abort(cfg: TrainConfig, log: RunLog, iteration: int, loss: float, reason: str) -> NumericError:
    details = {
        "run": cfg.run_name,
        "iteration": iteration,
        "last_loss": loss,
        "last_logged_loss": log.losses[-1][1] if log.losses else None,
        "clip_events": log.clip_events,
        "mean_clip_scale": float(np.mean(log.clip_scales)) if log.clip_scales else 1.0,
    }
    _LOGGER.error("训练因数值异常中止", extra=details)
    return NumericError(f"{cfg.run_name} 第 {iteration} 次迭代{reason}", details=details)


def train_run(cfg: TrainConfig) -> RunLog:
    """按配置完成一次训练，同一构建下相同配置结果完全一致。"""

    init_rng, data_rng = derive_streams(cfg.seed)
    input_size, output_size = task_dims(cfg.task)
    model = init_model(cfg.hidden_size, input_size, output_size, cfg.init, init_rng)
    state = AdamState.zeros_like(model)
    log = RunLog(config=cfg)
    _LOGGER.info(
        "开始训练",
        extra={
            "run": cfg.run_name,
            "iterations": cfg.iterations,
            "t_max": cfg.init.t_max,
            "mean_gate_time_constant": float(np.mean(gate_time_constants(model.cell.bf))),
        },
    )

    started = time.perf_counter()
    for iteration in range(1, cfg.iterations + 1):
        batch = generate(
            cfg.task,
            cfg.size,
            cfg.batch_size,
            data_rng,
            mask_mode=cfg.mask_mode,
            index=iteration - 1,
        )
        loss, grads = loss_and_gradients(model, batch)
        if not math.isfinite(loss):
            raise _abort(cfg, log, iteration, loss, "损失非有限")
        try:
            model, state = _update(cfg, model, grads, state, log)
        except NumericError as exc:
            raise _abort(cfg, log, iteration, loss, f"更新失败：{exc}") from exc

        if iteration % cfg.log_every == 0:
            log.losses.append((iteration, loss))
        if iteration % cfg.progress_every == 0:
            _LOGGER.info("训练进度", extra={"run": cfg.run_name, "iteration": iteration, "loss": loss})

    log.wall_time_s = time.perf_counter() - started
    log.final_model = model
    _LOGGER.info(
        "训练完成",
        extra={
            "run": cfg.run_name,
            "wall_time_s": round(log.wall_time_s, 3),
            "final_loss": log.losses[-1][1] if log.losses else None,
            "clip_events": log.clip_events,
        },
    )
    return log


def _update(
    cfg: TrainConfig, model: Model, grads: Gradients, state: AdamState, log: RunLog
) -> Tuple[Model, AdamState]:
    grads, scale = clip_global_norm(grads, cfg.clip_norm)
    log.clip_scales.append(scale)
    if scale < 1.0:
        log.clip_events += 1
        _LOGGER.debug("梯度已裁剪", extra={"run": cfg.run_name, "scale": scale})
    if cfg.optimizer is OptimizerName.SGD:
        return sgd_step(model, grads, cfg.learning_rate), state
    return adam_step(model, grads, state, cfg.learning_rate)


__all__ = ["RunLog", "train_run", "derive_streams", "INIT_STREAM", "DATA_STREAM"]
