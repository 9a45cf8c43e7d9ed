"""argparse 子命令定义与退出码映射。

退出码：0 成功；1 数值异常、解析失败或结论未达标；2 用法错误。"""

from __future__ import annotations

import argparse
import sys
from typing import Callable, Dict, Optional, Sequence

from minigate.autodiff import LossKind
from minigate.common import (
    ArgumentError,
    ConfigurationError,
    MinigateError,
    get_logger,
    setup_logging,
)
from minigate.harness import DEFAULT_CLIP_NORM, DEFAULT_SEEDS, TASK_DEFAULTS, BandMode, OptimizerName
from minigate.mgu import InitKind
from minigate.tasks import MaskMode, TaskName

from . import commands

_LOGGER = get_logger("cli")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

_ADDING = TASK_DEFAULTS[TaskName.ADDING]
_COPY = TASK_DEFAULTS[TaskName.COPY]


def _task_default(field: str) -> str:
    return f"按任务取默认值：adding={getattr(_ADDING, field)}，copy={getattr(_COPY, field)}"


def _add_train_parser(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "train",
        help="单次训练，写出损失 CSV 与最终检查点",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--task", choices=[t.value for t in TaskName], default=TaskName.ADDING.value, help="任务")
    parser.add_argument("--size", type=int, default=50, help="adding 为序列长度，copy 为 T")
    parser.add_argument(
        "--init", choices=[k.value for k in InitKind], default=InitKind.CHRONO_POSITIVE.value, help="门偏置初始化"
    )
    parser.add_argument("--seed", type=int, default=1, help="运行种子")
    parser.add_argument("--iters", type=int, default=None, help="迭代次数；" + _task_default("iterations"))
    parser.add_argument("--batch", type=int, default=None, help="批大小；" + _task_default("batch_size"))
    parser.add_argument("--hidden", type=int, default=None, help="隐藏维度；" + _task_default("hidden_size"))
    parser.add_argument("--lr", type=float, default=None, help="学习率；" + _task_default("learning_rate"))
    parser.add_argument("--clip", type=float, default=DEFAULT_CLIP_NORM, help="全局梯度范数上限，0 表示关闭")
    parser.add_argument("--log-every", type=int, default=1, help="每隔多少次迭代记录一次损失")
    parser.add_argument(
        "--optimizer", choices=[o.value for o in OptimizerName], default=OptimizerName.ADAM.value, help="优化器"
    )
    parser.add_argument(
        "--mask-mode", choices=[m.value for m in MaskMode], default=MaskMode.HALVES.value, help="加法任务标记抽样方式"
    )
    parser.add_argument("--out", default=None, help="输出目录，默认 $MINIGATE_OUTPUT_DIR/train")
    parser.set_defaults(handler=commands.cmd_train)


def _add_reproduce_parser(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "reproduce",
        help="运行完整对比网格，写出聚合 CSV、SVG 与摘要",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument(
        "--fast", action="store_true", help="快速模式：仅 adding-50，隐藏维度 64，2000 次迭代，并执行不变量检查"
    )
    parser.add_argument("--seeds", type=int, nargs="+", default=list(DEFAULT_SEEDS), help="种子列表")
    parser.add_argument(
        "--inits",
        nargs="+",
        choices=[k.value for k in InitKind],
        default=[InitKind.CHRONO_POSITIVE.value, InitKind.CONSTANT_ONE.value],
        help="参与对比的初始化方式",
    )
    parser.add_argument("--threads", type=int, default=None, help="并行训练数，默认取 $MINIGATE_THREADS")
    parser.add_argument(
        "--optimizer", choices=[o.value for o in OptimizerName], default=OptimizerName.ADAM.value, help="优化器"
    )
    parser.add_argument("--band", choices=[b.value for b in BandMode], default=BandMode.MINMAX.value, help="变化带")
    parser.add_argument("--html", action="store_true", help="同时输出 plotly 交互式 HTML")
    parser.add_argument("--strict", action="store_true", help="任一收敛结论未达标时以退出码 1 结束")
    parser.add_argument("--out", default=None, help="输出目录，默认 $MINIGATE_OUTPUT_DIR/reproduce")
    parser.set_defaults(handler=commands.cmd_reproduce)


def _add_gradcheck_parser(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "gradcheck",
        help="对随机小规模实例做有限差分梯度校验",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--trials", type=int, default=20, help="每种损失的实例数")
    parser.add_argument("--eps", type=float, default=1e-5, help="中心差分步长")
    parser.add_argument("--seed", type=int, default=0, help="首个实例种子")
    parser.add_argument("--tolerance", type=float, default=1e-4, help="最大相对误差容差")
    parser.set_defaults(handler=commands.cmd_gradcheck)


def _add_gen_parser(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "gen",
        help="按训练数据子流生成批次并以文本格式导出",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--task", choices=[t.value for t in TaskName], default=TaskName.ADDING.value, help="任务")
    parser.add_argument("--size", type=int, default=50, help="adding 为序列长度，copy 为 T")
    parser.add_argument("--seed", type=int, default=1, help="运行种子")
    parser.add_argument("--count", type=int, default=1, help="导出的批次数")
    parser.add_argument("--batch", type=int, default=1, help="每批样本数")
    parser.add_argument(
        "--mask-mode", choices=[m.value for m in MaskMode], default=MaskMode.HALVES.value, help="加法任务标记抽样方式"
    )
    parser.add_argument("--out", default=None, help="输出文件，缺省写到标准输出")
    parser.set_defaults(handler=commands.cmd_gen)


def _add_plot_parser(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "plot",
        help="由已有 CSV 重新绘图，无需重新训练",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--csv", action="append", required=True, help="曲线 CSV，可重复")
    parser.add_argument("--label", action="append", default=None, help="图例，可重复，数量须与 --csv 相同；缺省取文件名")
    parser.add_argument(
        "--axis", choices=[LossKind.MSE.value, LossKind.SOFTMAX_XENT.value], default=LossKind.MSE.value, help="纵轴"
    )
    parser.add_argument("--out", required=True, help="SVG 输出路径")
    parser.add_argument("--html", default=None, help="可选的 HTML 输出路径")
    parser.set_defaults(handler=commands.cmd_plot)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minigate",
        description="MGU 门偏置初始化对比实验",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--log-level", default=None, help="覆盖 LOG_LEVEL 环境变量")
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for register in (
        _add_train_parser,
        _add_reproduce_parser,
        _add_gradcheck_parser,
        _add_gen_parser,
        _add_plot_parser,
    ):
        register(subparsers)
    return parser


_FAILURE_CODES: Dict[type, int] = {
    ConfigurationError: EXIT_USAGE,
    ArgumentError: EXIT_USAGE,
}


def _exit_code(exc: MinigateError) -> int:
    for kind, code in _FAILURE_CODES.items():
        if isinstance(exc, kind):
            return code
    return EXIT_FAILURE


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except SystemExit as exc:
        return int(exc.code or 0)

    setup_logging(level=args.log_level)
    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except MinigateError as exc:
        code = _exit_code(exc)
        _LOGGER.error("命令执行失败", extra={"command": args.command, "error": str(exc), "exit_code": code})
        print(f"minigate {args.command}: {exc}", file=sys.stderr)
        return code


__all__ = ["build_parser", "main", "EXIT_OK", "EXIT_FAILURE", "EXIT_USAGE"]
