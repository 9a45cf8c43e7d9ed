"""多种子实验与复现网格。"""

from __future__ import annotations

from concurrent.futures import Future, ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from minigate.autodiff import LossKind
from minigate.common import ArgumentError, ExperimentError, get_logger
from minigate.config import get_settings
from minigate.mgu import InitKind
from minigate.tasks import TaskName, loss_kind_for

from .config import TrainConfig
from .plotting import AxisLabel
from .trainer import RunLog, train_run

_LOGGER = get_logger("harness.experiment")

DEFAULT_SEEDS: Tuple[int, ...] = (1, 2, 3)
DEFAULT_INITS: Tuple[InitKind, ...] = (InitKind.CHRONO_POSITIVE, InitKind.CONSTANT_ONE)


def _resolve_workers(max_workers: Optional[int], runs: int) -> int:
    limit = max_workers if max_workers is not None else get_settings().runtime.threads
    return max(1, min(int(limit), runs))


def iter_runs(
    configs: Sequence[TrainConfig], *, max_workers: Optional[int] = None
) -> Iterator[RunLog]:
    """按 configs 的顺序逐个产出训练日志。

    max_workers 为 1 时在当前进程顺序执行；否则全部配置一次提交到同一个进程池，
    各次训练互不共享可变状态。某次失败时取消尚未开始的训练。"""

    workers = _resolve_workers(max_workers, len(configs))
    if workers == 1:
        for cfg in configs:
            yield _run_one(cfg)
        return

    _LOGGER.info("启动训练进程池", extra={"runs": len(configs), "workers": workers})
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures: List[Tuple[TrainConfig, Future[RunLog]]] = [
            (cfg, pool.submit(train_run, cfg)) for cfg in configs
        ]
        for cfg, future in futures:
            try:
                log = future.result()
            except Exception as exc:
                pool.shutdown(wait=False, cancel_futures=True)
                raise ExperimentError(f"{cfg.run_name} 训练失败：{exc}", seed=cfg.seed) from exc
            yield log


def run_experiment(
    base: TrainConfig, seeds: Sequence[int], *, max_workers: Optional[int] = None
) -> List[RunLog]:
    """对每个种子执行一次训练，结果顺序与 seeds 一致。"""

    if not seeds:
        raise ArgumentError("至少需要一个种子")
    configs = [base.with_seed(int(seed)) for seed in seeds]
    _LOGGER.info(
        "开始多种子实验",
        extra={"figure": base.figure, "init": base.init.kind.value, "seeds": list(seeds)},
    )
    return list(iter_runs(configs, max_workers=max_workers))


def _run_one(cfg: TrainConfig) -> RunLog:
    try:
        return train_run(cfg)
    except Exception as exc:
        raise ExperimentError(f"{cfg.run_name} 训练失败：{exc}", seed=cfg.seed) from exc


@dataclass(frozen=True)
class FigureSpec:
    """一张对比图：一个任务规模下各初始化方式的曲线。"""

    task: TaskName
    size: int

    @property
    def name(self) -> str:
        return f"{self.task.value}-{self.size}"

    @property
    def loss_kind(self) -> LossKind:
        return loss_kind_for(self.task)

    @property
    def axis(self) -> AxisLabel:
        return AxisLabel.MSE if self.loss_kind is LossKind.MSE else AxisLabel.XENT


FULL_FIGURES: Tuple[FigureSpec, ...] = (
    FigureSpec(TaskName.ADDING, 50),
    FigureSpec(TaskName.ADDING, 250),
    FigureSpec(TaskName.COPY, 50),
    FigureSpec(TaskName.COPY, 200),
)
FAST_FIGURES: Tuple[FigureSpec, ...] = (FigureSpec(TaskName.ADDING, 50),)

FAST_HIDDEN = 64
FAST_ITERATIONS = 2000


@dataclass(frozen=True)
class ExperimentGrid:
    """图 × 初始化方式 × 种子 的完整实验网格。"""

    figures: Tuple[FigureSpec, ...] = FULL_FIGURES
    inits: Tuple[InitKind, ...] = DEFAULT_INITS
    seeds: Tuple[int, ...] = DEFAULT_SEEDS
    overrides: Dict[str, object] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.figures or not self.inits or not self.seeds:
            raise ArgumentError("实验网格的图、初始化方式与种子均不能为空")
        object.__setattr__(self, "inits", tuple(InitKind(kind) for kind in self.inits))
        object.__setattr__(self, "seeds", tuple(int(seed) for seed in self.seeds))

    @classmethod
    def full(
        cls,
        *,
        inits: Iterable[InitKind | str] = DEFAULT_INITS,
        seeds: Iterable[int] = DEFAULT_SEEDS,
        **overrides: object,
    ) -> ExperimentGrid:
        """四张图 × 各初始化方式 × 种子，默认 24 次训练。"""

        return cls(FULL_FIGURES, tuple(InitKind(k) for k in inits), tuple(seeds), dict(overrides))

    @classmethod
    def fast(
        cls,
        *,
        inits: Iterable[InitKind | str] = DEFAULT_INITS,
        seeds: Iterable[int] = DEFAULT_SEEDS,
        **overrides: object,
    ) -> ExperimentGrid:
        """仅 adding-50，隐藏维度 64，2000 次迭代。"""

        fields = {"hidden_size": FAST_HIDDEN, "iterations": FAST_ITERATIONS, **overrides}
        return cls(FAST_FIGURES, tuple(InitKind(k) for k in inits), tuple(seeds), fields)

    def config_for(self, figure: FigureSpec, init: InitKind) -> TrainConfig:
        """种子为 0 的基准配置，运行时经 with_seed 替换种子。"""

        return TrainConfig.for_task(figure.task, figure.size, init, **self.overrides)  # type: ignore[arg-type]

    @property
    def configs(self) -> List[TrainConfig]:
        return [
            self.config_for(figure, init).with_seed(seed)
            for figure in self.figures
            for init in self.inits
            for seed in self.seeds
        ]

    @property
    def run_count(self) -> int:
        return len(self.figures) * len(self.inits) * len(self.seeds)

    def run(
        self, *, max_workers: Optional[int] = None
    ) -> Iterator[Tuple[FigureSpec, InitKind, List[RunLog]]]:
        """整个网格共用一个进程池；按 (图, 初始化方式) 分组、依网格顺序产出各种子的日志。"""

        _LOGGER.info("开始网格实验", extra={"runs": self.run_count})
        runs = iter_runs(self.configs, max_workers=max_workers)
        for figure in self.figures:
            for init in self.inits:
                yield figure, init, [next(runs) for _ in self.seeds]


__all__ = [
    "DEFAULT_SEEDS",
    "DEFAULT_INITS",
    "FAST_HIDDEN",
    "FAST_ITERATIONS",
    "FULL_FIGURES",
    "FAST_FIGURES",
    "FigureSpec",
    "ExperimentGrid",
    "iter_runs",
    "run_experiment",
]
