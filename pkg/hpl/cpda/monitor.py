# hpl/cpda/monitor.py
from __future__ import annotations

import logging
from collections import deque

from ..comptree.graph import CompGraph, NodeKind
from ..hostack.orddec import SafetyChecker, order_decomposition
from ..hostack.stack import max_link_height, render_stack, top1
from ..models import MonitorReport, MonitorViolation
from .machine import Configuration, Internal, Machine, Output, Stuck, step

logger = logging.getLogger(__name__)


def safety_monitor(m: Machine, steps: int, max_violations: int = 100) -> MonitorReport:
    """
    Explore every branch of a CPDA(G) run breadth-first for `steps` → steps
    and check each reached configuration.

    - the stack is 0-safe
    - at a variable on top, its binder is the last entry of orddec_{ord x}
    - popping `span` symbols exposes the binder
    """
    graph: CompGraph = m.symbols
    checker = SafetyChecker(graph, m.order)
    report = MonitorReport()
    queue: deque[tuple[Configuration | Stuck, tuple[int, ...]]] = deque([(m.initial, ())])
    taken = 0

    def flag(kind: str, c: Configuration | None, branch: tuple[int, ...], detail: str) -> None:
        if len(report.violations) >= max_violations:
            return
        top = top1(c.stack).symbol if c is not None else None
        report.violations.append(
            MonitorViolation(
                kind=kind,
                step=taken,
                branch=list(branch),
                top=graph.label(top.node) if top is not None else None,
                detail=detail,
                stack=render_stack(c.stack, graph.label) if c is not None else "",
            )
        )

    while queue:
        c, branch = queue.popleft()
        if isinstance(c, Stuck):
            flag("stuck", None, branch, c.reason)
            continue
        _check(c, graph, m.order, checker, report, lambda kind, detail: flag(kind, c, branch, detail))
        if taken >= steps:
            continue
        taken += 1
        outcome = step(m, c)
        if isinstance(outcome, Internal):
            queue.append((outcome.config, branch))
        elif isinstance(outcome, Output):
            for i, succ in enumerate(outcome.successors, start=1):
                queue.append((succ, (*branch, i)))
        else:
            queue.append((outcome, branch))

    logger.info(
        "[safety_monitor] %d configurations, %d violations",
        report.configurations,
        len(report.violations),
    )
    return report


def _check(c: Configuration, graph: CompGraph, n: int, checker: SafetyChecker, report, flag) -> None:
    report.configurations += 1
    report.max_link_height = max(report.max_link_height, max_link_height(c.stack))
    safe = checker.is_l_safe(c.stack, 0)
    if not safe:
        flag("unsafe-stack", "; ".join(safe.witness))

    s1 = top1(c.stack)
    if s1.symbol is None or graph[s1.symbol.node].kind is not NodeKind.VAR:
        return
    report.variable_tops += 1
    var = graph[s1.symbol.node]
    expected = s1.size - 1 - var.span
    if expected < 0 or s1[expected].node != var.binder:
        found = graph.label(s1[expected].node) if expected >= 0 else "nothing"
        flag("span", f"{var.label}: pop_1^{var.span} exposes {found}, binder is {graph.label(var.binder)}")

    dec = order_decomposition(c.stack, var.order, graph)
    last = dec[-1] if dec else None
    if last is None or last.symbol.node != var.binder or last.position != expected:
        got = f"{graph.label(last.symbol.node)} at {last.position}" if last else "an empty decomposition"
        flag(
            "binder-not-in-orddec",
            f"{var.label}: orddec_{var.order} ends with {got}, "
            f"binder is {graph.label(var.binder)} at {expected}",
        )
