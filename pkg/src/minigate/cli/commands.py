"""各子命令的实现，返回进程退出码。"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from minigate.autodiff.objective import BackwardFn
from minigate.common import ArgumentError, ExperimentError, get_logger, output_dir
from minigate.harness import (
    AggregatedCurve,
    AxisLabel,
    ExperimentGrid,
    FigureResult,
    TrainConfig,
    aggregate,
    emit_html,
    emit_svg,
    evaluate_claims,
    read_csv,
    run_gradcheck_suite,
    run_invariant_suite,
    save_checkpoint,
    summarize,
    train_run,
    write_csv,
)
from minigate.harness.trainer import DATA_STREAM
from minigate.tasks import dump_batch, generate
from minigate.tensor import RngState

_LOGGER = get_logger("cli.commands")


def _resolve_out(value: Optional[str], default: str) -> Path:
    target = Path(value) if value else output_dir(default)
    target.mkdir(parents=True, exist_ok=True)
    return target


def cmd_train(args: argparse.Namespace) -> int:
    if args.clip < 0:
        raise ArgumentError(f"--clip 必须 ≥ 0（0 表示关闭裁剪），当前为 {args.clip}")
    cfg = TrainConfig.for_task(
        args.task,
        args.size,
        args.init,
        iterations=args.iters,
        batch_size=args.batch,
        hidden_size=args.hidden,
        learning_rate=args.lr,
        clip_norm=args.clip if args.clip > 0 else None,
        seed=args.seed,
        log_every=args.log_every,
        optimizer=args.optimizer,
        mask_mode=args.mask_mode,
    )
    out = _resolve_out(args.out, "train")
    log = train_run(cfg)
    csv_path = write_csv(log, out / f"{cfg.run_name}.csv")
    assert log.final_model is not None
    ckpt_path = save_checkpoint(log.final_model, out / f"{cfg.run_name}.ckpt")
    final = log.losses[-1][1] if log.losses else float("nan")
    print(f"{cfg.run_name}: final loss {final:.6f}, {log.wall_time_s:.1f}s")
    print(f"- losses: {csv_path}")
    print(f"- checkpoint: {ckpt_path}")
    return 0


def _write_figure(result: FigureResult, out: Path, *, html: bool) -> None:
    curves = [(init.label, curve) for init, curve in result.curves.items()]
    emit_svg(curves, result.figure.axis, out / f"{result.figure.name}.svg")
    if html:
        emit_html(curves, result.figure.axis, out / f"{result.figure.name}.html")


def cmd_reproduce(args: argparse.Namespace) -> int:
    """整个网格共用一个进程池；每张图的训练完成后立即写出，失败时保留已完成的输出。"""

    overrides = {"optimizer": args.optimizer, "band": args.band}
    factory = ExperimentGrid.fast if args.fast else ExperimentGrid.full
    grid = factory(inits=args.inits, seeds=args.seeds, **overrides)
    out = _resolve_out(args.out, "reproduce")
    _LOGGER.info("开始复现实验", extra={"runs": grid.run_count, "fast": args.fast, "out": str(out)})

    results: List[FigureResult] = []
    current: Optional[FigureResult] = None
    try:
        for figure, init, logs in grid.run(max_workers=args.threads):
            if current is None or current.figure != figure:
                current = FigureResult(figure=figure)
            for log in logs:
                write_csv(log, out / "runs" / f"{log.config.run_name}.csv")
            curve = aggregate(logs, logs[0].config.band)
            write_csv(curve, out / f"{figure.name}-{init.value}.csv")
            current.logs[init] = logs
            current.curves[init] = curve
            if len(current.curves) == len(grid.inits):
                _write_figure(current, out, html=args.html)
                results.append(current)
    except ExperimentError as exc:
        _LOGGER.error("实验失败，已保留此前的输出", extra={"seed": exc.seed})
        print(f"run failed: {exc}", file=sys.stderr)
        return 1

    summary = summarize(results)
    summary.to_csv(out / "summary.csv", index=False)
    print(summary.to_string(index=False))

    failed = False
    claims = evaluate_claims(results)
    for check in claims:
        print(f"[{'PASS' if check.passed else 'FAIL'}] {check.name}: {check.detail}")
    if args.strict and not all(check.passed for check in claims):
        failed = True

    if args.fast:
        for check in run_invariant_suite(grid.seeds[0], out / "invariants"):
            print(f"[{'PASS' if check.passed else 'FAIL'}] {check.name}: {check.detail}")
            failed = failed or not check.passed
    return 1 if failed else 0


def cmd_gradcheck(args: argparse.Namespace, *, backward: Optional[BackwardFn] = None) -> int:
    if args.trials < 1:
        raise ArgumentError("--trials 必须 ≥ 1")
    outcomes = run_gradcheck_suite(
        args.trials, args.eps, args.seed, tolerance=args.tolerance, backward=backward
    )
    worst: Dict[str, float] = {}
    for outcome in outcomes:
        key = outcome.loss_kind.value
        worst[key] = max(worst.get(key, 0.0), outcome.max_rel_error)
    for key, error in worst.items():
        print(f"{key}: max relative error {error:.3e} over {args.trials} instances")
    failures = [outcome for outcome in outcomes if not outcome.passed]
    for outcome in failures:
        print(
            f"FAIL loss={outcome.loss_kind.value} init={outcome.init_kind.value} "
            f"seed={outcome.seed} error={outcome.max_rel_error:.3e}",
            file=sys.stderr,
        )
    return 1 if failures else 0


def _gen_target(out: Optional[str], index: int, count: int) -> Optional[Path]:
    if out is None:
        return None
    path = Path(out)
    if count == 1:
        return path
    return path.with_name(f"{path.stem}-{index}{path.suffix}")


def cmd_gen(args: argparse.Namespace) -> int:
    """批次取自与训练相同的数据子流，第 i 批即该种子训练时第 i 次迭代的输入（批大小相同时）。"""

    if args.count < 1:
        raise ArgumentError("--count 必须 ≥ 1")
    rng = RngState(args.seed).spawn(DATA_STREAM)
    for index in range(args.count):
        batch = generate(
            args.task, args.size, args.batch, rng, mask_mode=args.mask_mode, index=index
        )
        target = _gen_target(args.out, index, args.count)
        if target is None:
            dump_batch(batch, sys.stdout)
            continue
        target.parent.mkdir(parents=True, exist_ok=True)
        with target.open("w", encoding="utf-8") as handle:
            dump_batch(batch, handle)
        print(f"- batch {index}: {target}")
    return 0


def _as_curve(parsed: List[Tuple[int, float]] | AggregatedCurve) -> AggregatedCurve:
    if isinstance(parsed, AggregatedCurve):
        return parsed
    iterations = [iteration for iteration, _ in parsed]
    values = [loss for _, loss in parsed]
    return AggregatedCurve(iterations=iterations, mean=values, lo=values, hi=values, n_seeds=1)


def cmd_plot(args: argparse.Namespace) -> int:
    labels = args.label or [Path(path).stem for path in args.csv]
    if len(labels) != len(args.csv):
        raise ArgumentError(f"--label 数量 ({len(labels)}) 与 --csv 数量 ({len(args.csv)}) 不一致")
    curves = [(label, _as_curve(read_csv(path))) for label, path in zip(labels, args.csv)]
    axis = AxisLabel.parse(args.axis)
    svg_path = emit_svg(curves, axis, args.out)
    print(f"- svg: {svg_path}")
    if args.html:
        print(f"- html: {emit_html(curves, axis, args.html)}")
    return 0


__all__ = ["cmd_train", "cmd_reproduce", "cmd_gradcheck", "cmd_gen", "cmd_plot"]
