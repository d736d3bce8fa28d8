# hpl/pda/lockstep.py
from __future__ import annotations

import logging
from collections import deque

from ..cpda.machine import (
    Collapse,
    Configuration,
    Internal,
    Machine,
    Output,
    PdaMachine,
    StepOutcome,
    Stuck,
    micro_steps,
    step,
)
from ..hostack.stack import link_erased_equal, render_stack
from ..models import LockstepMismatch, LockstepReport

logger = logging.getLogger(__name__)

type Pair = tuple[Configuration | Stuck, Configuration | Stuck, tuple[int, ...]]


def lockstep_check(cpda: Machine, pda: PdaMachine, steps: int, max_mismatches: int = 100) -> LockstepReport:
    """
    Run both machines → step by → step over every branch, breadth-first, for
    `steps` steps, comparing link-erased stacks and step outcomes. Each
    collapse the CPDA executes is compared with the pop the PDA runs instead.
    """
    report = LockstepReport()
    queue: deque[Pair] = deque([(cpda.initial, pda.initial, ())])

    def mismatch(kind: str, branch: tuple[int, ...], detail: str) -> None:
        if len(report.mismatches) < max_mismatches:
            report.mismatches.append(
                LockstepMismatch(kind=kind, step=report.steps, branch=list(branch), detail=detail)
            )

    label = cpda.label
    if not _same_config(cpda.initial, pda.initial):
        mismatch("stack", (), "initial configurations differ")

    while queue and report.steps < steps:
        a, b, branch = queue.popleft()
        if isinstance(a, Stuck) or isinstance(b, Stuck):
            if isinstance(a, Stuck) != isinstance(b, Stuck):
                mismatch("outcome", branch, f"only one machine is stuck: {a} / {b}")
            continue
        report.steps += 1
        _compare_collapses(cpda, pda, a, b, branch, report, mismatch)
        oa, ob = step(cpda, a), step(pda, b)
        for pair in _compare_outcomes(oa, ob, branch, mismatch, label):
            queue.append(pair)

    logger.info(
        "[lockstep_check] %d steps, %d collapses, %d mismatches",
        report.steps,
        report.collapses,
        len(report.mismatches),
    )
    return report


def _same_config(a: Configuration, b: Configuration) -> bool:
    return a.state == b.state and link_erased_equal(a.stack, b.stack)


def _compare_collapses(cpda, pda, a, b, branch, report: LockstepReport, mismatch) -> None:
    ma, mb = micro_steps(cpda, a), micro_steps(pda, b)
    for x, y in zip(ma, mb, strict=False):
        if not isinstance(x.op, Collapse):
            continue
        report.collapses += 1
        if x.after is None or y.after is None:
            if (x.after is None) != (y.after is None):
                mismatch("collapse", branch, f"collapse defined on one side only ({x.op} / {y.op})")
            return
        if not link_erased_equal(x.after, y.after):
            mismatch(
                "collapse",
                branch,
                f"collapse gives {render_stack(x.after, cpda.label)}, "
                f"{y.op} gives {render_stack(y.after, pda.label)}",
            )


def _compare_outcomes(oa: StepOutcome, ob: StepOutcome, branch, mismatch, label) -> list[Pair]:
    if isinstance(oa, Internal) and isinstance(ob, Internal):
        if not _same_config(oa.config, ob.config):
            mismatch(
                "stack",
                branch,
                f"{render_stack(oa.config.stack, label)} vs {render_stack(ob.config.stack, label)}",
            )
            return []
        return [(oa.config, ob.config, branch)]
    if isinstance(oa, Output) and isinstance(ob, Output):
        if oa.terminal != ob.terminal or len(oa.successors) != len(ob.successors):
            mismatch("outcome", branch, f"output {oa.terminal} vs {ob.terminal}")
            return []
        pairs: list[Pair] = []
        for i, (sa, sb) in enumerate(zip(oa.successors, ob.successors, strict=True), start=1):
            if isinstance(sa, Configuration) and isinstance(sb, Configuration) and not _same_config(sa, sb):
                mismatch("stack", (*branch, i), "successor stacks differ")
                continue
            pairs.append((sa, sb, (*branch, i)))
        return pairs
    if isinstance(oa, Stuck) and isinstance(ob, Stuck):
        return []
    mismatch("outcome", branch, f"{type(oa).__name__} vs {type(ob).__name__}")
    return []
