"""梯度校验与不变量检查，`gradcheck` 与 `reproduce --fast` 共用。"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, List, Optional, Tuple

import numpy as np

from minigate.autodiff import (
    LossKind,
    forward_loss,
    grad_check,
    loss_and_gradients,
    smallest_gradient,
)
from minigate.autodiff.objective import BackwardFn
from minigate.common import get_logger
from minigate.mgu import (
    InitKind,
    InitSpec,
    Model,
    chrono_bias,
    combine_state,
    init_model,
    mgu_forward,
)
from minigate.tasks import (
    Batch,
    BatchMeta,
    TaskName,
    baseline_loss,
    empirical_constant_mse,
    gen_adding,
    gen_copy,
)
from minigate.tasks.models import COPY_SIGNAL
from minigate.tensor import RngState

from .aggregate import aggregate
from .checkpoint import load_checkpoint, save_checkpoint
from .config import TrainConfig
from .storage import read_curve_csv, read_run_csv, write_csv
from .trainer import train_run

_LOGGER = get_logger("harness.diagnostics")

GRADCHECK_TOLERANCE = 1e-4
CHRONO_MEAN_T51 = (50.0 * math.log(50.0) - 49.0) / 49.0


@dataclass(frozen=True)
class GradCheckOutcome:
    loss_kind: LossKind
    init_kind: InitKind
    seed: int
    max_rel_error: float
    tolerance: float = GRADCHECK_TOLERANCE

    @property
    def passed(self) -> bool:
        return self.max_rel_error < self.tolerance


def _instance_batch(
    loss_kind: LossKind, rng: RngState, steps: int, batch: int, input_size: int, output_size: int
) -> Batch:
    inputs = rng.normal(1.0, (steps, input_size, batch))
    if loss_kind is LossKind.MSE:
        targets = rng.normal(1.0, (1, batch))
        task = TaskName.ADDING
    else:
        targets = rng.integers(0, output_size, (steps, batch))
        task = TaskName.COPY
    return Batch(
        xs=[np.ascontiguousarray(x) for x in inputs],
        loss=loss_kind,
        targets=targets,
        meta=BatchMeta(task=task, size=steps, seed=rng.seed),
    )


def random_instance(
    loss_kind: LossKind | str,
    init_kind: InitKind | str,
    seed: int,
    *,
    hidden: int = 8,
    steps: int = 12,
    batch: int = 4,
    input_size: int = 2,
    output_size: int = 3,
    min_gradient: float = 1e-6,
    max_attempts: int = 50,
) -> Tuple[Model, Batch]:
    """由种子确定的小规模 (模型, 批次)，用于梯度校验。

    解析梯度中存在接近 0 的分量时相对误差由舍入噪声主导，因此按子流依次重抽，
    返回第一个所有分量都不小于 min_gradient 的实例；都不满足时取最小分量最大者。"""

    kind = LossKind(loss_kind)
    out = 1 if kind is LossKind.MSE else output_size
    spec = InitSpec.for_sequence(init_kind, steps)
    root = RngState(seed)
    best: Optional[Tuple[float, Model, Batch]] = None
    for attempt in range(max_attempts):
        rng = root.spawn(attempt)
        model = init_model(hidden, input_size, out, spec, rng)
        # 非零偏置，使 b 与 c 的梯度不退化为特殊情形
        model.cell.b[...] = rng.normal(0.5, model.cell.b.shape)
        model.readout.c[...] = rng.normal(0.5, model.readout.c.shape)
        instance = _instance_batch(kind, rng, steps, batch, input_size, out)
        _, grads = loss_and_gradients(model, instance)
        floor = smallest_gradient(grads)
        if floor >= min_gradient:
            return model, instance
        if best is None or floor > best[0]:
            best = (floor, model, instance)
    assert best is not None
    _LOGGER.warning("未找到梯度分量全部足够大的实例", extra={"seed": seed, "smallest": best[0]})
    return best[1], best[2]


def run_gradcheck_suite(
    trials: int = 20,
    eps: float = 1e-5,
    seed: int = 0,
    *,
    tolerance: float = GRADCHECK_TOLERANCE,
    backward: Optional[BackwardFn] = None,
) -> List[GradCheckOutcome]:
    """每种损失各 trials 个实例；实例种子为 seed + trial，初始化方式轮换。"""

    inits = list(InitKind)
    outcomes: List[GradCheckOutcome] = []
    for loss_kind in (LossKind.MSE, LossKind.SOFTMAX_XENT):
        for trial in range(trials):
            instance_seed = seed + trial
            init_kind = inits[trial % len(inits)]
            model, batch = random_instance(loss_kind, init_kind, instance_seed)
            error = grad_check(model, batch, eps, backward=backward)
            outcome = GradCheckOutcome(loss_kind, init_kind, instance_seed, error, tolerance)
            outcomes.append(outcome)
            if not outcome.passed:
                _LOGGER.warning(
                    "梯度校验超出容差",
                    extra={"loss": loss_kind.value, "init": init_kind.value, "seed": instance_seed, "error": error},
                )
    return outcomes


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _check_gradients(seed: int, workdir: Path) -> Tuple[bool, str]:
    outcomes = run_gradcheck_suite(trials=20, seed=seed)
    worst = max(outcomes, key=lambda o: o.max_rel_error)
    return all(o.passed for o in outcomes), f"{len(outcomes)} 个实例，最大相对误差 {worst.max_rel_error:.3e}"


def _check_gate_and_contraction(seed: int, workdir: Path) -> Tuple[bool, str]:
    rng = RngState(seed)
    model = init_model(16, 4, 1, InitSpec(InitKind.CHRONO_POSITIVE, 100), rng)
    for _, matrix in model:
        matrix *= 3.0
    xs = [rng.normal(2.0, (4, 8)) for _ in range(100)]
    h0 = rng.normal(2.0, (16, 8))
    hs, caches = mgu_forward(model.cell, xs, h0)
    gate_ok = all(np.all((c.f_t > 0.0) & (c.f_t < 1.0)) for c in caches)
    bound_ok = all(
        np.all(np.abs(c.h_t) <= np.maximum(np.abs(c.h_prev), 1.0)) for c in caches
    )
    preserve_ok = np.array_equal(combine_state(h0, np.zeros_like(h0), hs[0]), h0)
    return bool(gate_ok and bound_ok and preserve_ok), f"门值∈(0,1)={gate_ok} 收缩界={bound_ok} f=0 保持={preserve_ok}"


def _check_adding_layout(seed: int, workdir: Path) -> Tuple[bool, str]:
    batch = gen_adding(50, 1000, RngState(seed))
    inputs = batch.inputs_array()  # T×2×B
    mask = inputs[:, 1, :]
    halves_ok = np.all(mask[:25].sum(axis=0) == 1.0) and np.all(mask[25:].sum(axis=0) == 1.0)
    sums = np.sum(inputs[:, 0, :] * mask, axis=0)
    target_ok = np.array_equal(sums, batch.targets[0]) and np.all((batch.targets >= 0) & (batch.targets <= 2))
    return bool(halves_ok and target_ok), f"掩码分段={bool(halves_ok)} 目标={bool(target_ok)}"


def _check_copy_layout(seed: int, workdir: Path) -> Tuple[bool, str]:
    batch = gen_copy(50, 200, RngState(seed))
    symbols = np.argmax(batch.inputs_array(), axis=1)  # T×B
    one_hot_ok = np.all(batch.inputs_array().sum(axis=1) == 1.0)
    signal_ok = np.all(symbols[59] == COPY_SIGNAL) and np.all(np.sum(symbols == COPY_SIGNAL, axis=0) == 1)
    quiet_ok = np.all(symbols[10:59] == 0) and np.all(symbols[60:] == 0)
    recall_ok = np.array_equal(batch.targets[60:], symbols[:10]) and np.all(batch.targets[:60] == 0)
    passed = bool(batch.steps == 70 and one_hot_ok and signal_ok and quiet_ok and recall_ok)
    return passed, f"长度={batch.steps} 信号={bool(signal_ok)} 回忆={bool(recall_ok)}"


def _check_chrono_bias(seed: int, workdir: Path) -> Tuple[bool, str]:
    bias = chrono_bias(RngState(seed), 100_000, 51)
    bounds_ok = bool(np.all(bias >= 0.0) and np.all(bias <= math.log(50.0)))
    mean = float(np.mean(bias))
    const = init_model(8, 2, 1, InitSpec(InitKind.CONSTANT_ONE), RngState(seed)).cell.bf
    const_ok = bool(np.all(const == 1.0))
    passed = bounds_ok and abs(mean - CHRONO_MEAN_T51) <= 0.05 and const_ok
    return passed, f"均值={mean:.4f}（期望 {CHRONO_MEAN_T51:.4f}）范围={bounds_ok} const={const_ok}"


def _check_baselines(seed: int, workdir: Path) -> Tuple[bool, str]:
    empirical = empirical_constant_mse(100_000, RngState(seed))
    copy50 = baseline_loss(TaskName.COPY, 50)
    copy200 = baseline_loss(TaskName.COPY, 200)
    passed = (
        abs(empirical - 1.0 / 6.0) <= 0.005
        and abs(copy50 - 0.2971) <= 5e-4
        and abs(copy200 - 0.0945) <= 5e-4
    )
    return passed, f"常数 MSE={empirical:.4f} copy-50={copy50:.4f} copy-200={copy200:.4f}"


def _check_untrained_copy(seed: int, workdir: Path) -> Tuple[bool, str]:
    init_rng, data_rng = RngState(seed).spawn(0), RngState(seed).spawn(1)
    model = init_model(128, 10, 10, InitSpec.for_sequence(InitKind.CHRONO_POSITIVE, 70), init_rng)
    loss, _ = forward_loss(model, gen_copy(50, 128, data_rng))
    low, high = 0.5 * math.log(10.0), 3.0 * math.log(10.0)
    return low <= loss <= high, f"未训练交叉熵={loss:.4f}，区间 [{low:.4f}, {high:.4f}]"


def _tiny_config(seed: int) -> TrainConfig:
    return TrainConfig.for_task(
        TaskName.ADDING, 10, InitKind.CHRONO_POSITIVE, iterations=20, batch_size=8, hidden_size=8, seed=seed
    )


def _check_round_trips(seed: int, workdir: Path) -> Tuple[bool, str]:
    logs = [train_run(_tiny_config(seed + offset)) for offset in range(3)]
    raw_path = write_csv(logs[0], workdir / "roundtrip-run.csv")
    raw_ok = read_run_csv(raw_path) == logs[0].losses
    curve = aggregate(logs)
    curve_path = write_csv(curve, workdir / "roundtrip-curve.csv")
    parsed = read_curve_csv(curve_path, n_seeds=curve.n_seeds)
    curve_ok = all(
        np.allclose(getattr(parsed, name), getattr(curve, name), rtol=0.0, atol=1e-12)
        for name in ("iterations", "mean", "lo", "hi")
    )
    assert logs[0].final_model is not None
    ckpt_path = save_checkpoint(logs[0].final_model, workdir / "roundtrip.ckpt")
    ckpt_ok = load_checkpoint(ckpt_path, expected_dims=logs[0].final_model.dims).equals(logs[0].final_model)
    return raw_ok and curve_ok and ckpt_ok, f"原始 CSV={raw_ok} 聚合 CSV={curve_ok} 检查点={ckpt_ok}"


def _check_determinism(seed: int, workdir: Path) -> Tuple[bool, str]:
    first = train_run(_tiny_config(seed))
    second = train_run(_tiny_config(seed))
    spec = InitSpec.for_sequence(InitKind.CHRONO_POSITIVE, 50)
    models_ok = init_model(8, 2, 1, spec, RngState(seed)).equals(init_model(8, 2, 1, spec, RngState(seed)))
    losses_ok = first.losses == second.losses
    return losses_ok and models_ok, f"损失轨迹一致={losses_ok} 初始化一致={models_ok}"


_CHECKS: Tuple[Tuple[str, Callable[[int, Path], Tuple[bool, str]]], ...] = (
    ("gradcheck", _check_gradients),
    ("gate-range-contraction", _check_gate_and_contraction),
    ("adding-layout", _check_adding_layout),
    ("copy-layout", _check_copy_layout),
    ("chrono-bias", _check_chrono_bias),
    ("baselines", _check_baselines),
    ("untrained-copy-loss", _check_untrained_copy),
    ("round-trips", _check_round_trips),
    ("determinism", _check_determinism),
)


def run_invariant_suite(seed: int, workdir: Path | str) -> List[CheckResult]:
    """依次执行全部不变量检查，单项异常记为失败而不中断其余检查。"""

    target = Path(workdir)
    target.mkdir(parents=True, exist_ok=True)
    results: List[CheckResult] = []
    for name, check in _CHECKS:
        try:
            passed, detail = check(seed, target)
        except Exception as exc:  # noqa: BLE001 - 记录后继续
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, bool(passed), detail))
        _LOGGER.info("不变量检查", extra={"check": name, "passed": bool(passed), "detail": detail})
    return results


__all__ = [
    "GRADCHECK_TOLERANCE",
    "GradCheckOutcome",
    "CheckResult",
    "random_instance",
    "run_gradcheck_suite",
    "run_invariant_suite",
]
