"""训练循环、多种子实验、聚合、持久化与绘图。"""

from .aggregate import AggregatedCurve, aggregate
from .checkpoint import load_checkpoint, save_checkpoint
from .config import (
    DEFAULT_CLIP_NORM,
    TASK_DEFAULTS,
    BandMode,
    OptimizerName,
    TaskDefaults,
    TrainConfig,
)
from .diagnostics import (
    GRADCHECK_TOLERANCE,
    CheckResult,
    GradCheckOutcome,
    random_instance,
    run_gradcheck_suite,
    run_invariant_suite,
)
from .experiment import (
    DEFAULT_INITS,
    DEFAULT_SEEDS,
    FAST_FIGURES,
    FULL_FIGURES,
    ExperimentGrid,
    FigureSpec,
    iter_runs,
    run_experiment,
)
from .plotting import AxisLabel, emit_html, emit_svg, render_svg
from .storage import CURVE_COLUMNS, RUN_COLUMNS, read_csv, read_curve_csv, read_run_csv, write_csv
from .summary import ClaimCheck, FigureResult, evaluate_claims, summarize
from .trainer import RunLog, derive_streams, train_run

__all__ = [
    "TrainConfig",
    "TaskDefaults",
    "TASK_DEFAULTS",
    "DEFAULT_CLIP_NORM",
    "OptimizerName",
    "BandMode",
    "RunLog",
    "train_run",
    "derive_streams",
    "AggregatedCurve",
    "aggregate",
    "iter_runs",
    "run_experiment",
    "FigureSpec",
    "ExperimentGrid",
    "FULL_FIGURES",
    "FAST_FIGURES",
    "DEFAULT_SEEDS",
    "DEFAULT_INITS",
    "RUN_COLUMNS",
    "CURVE_COLUMNS",
    "write_csv",
    "read_csv",
    "read_run_csv",
    "read_curve_csv",
    "save_checkpoint",
    "load_checkpoint",
    "AxisLabel",
    "render_svg",
    "emit_svg",
    "emit_html",
    "FigureResult",
    "ClaimCheck",
    "summarize",
    "evaluate_claims",
    "GRADCHECK_TOLERANCE",
    "GradCheckOutcome",
    "CheckResult",
    "random_instance",
    "run_gradcheck_suite",
    "run_invariant_suite",
]
