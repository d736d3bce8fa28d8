# hpl/cpda/views.py
from __future__ import annotations

import logging
from dataclasses import dataclass

from ..comptree.graph import CompGraph, NodeKind
from ..errors import InvalidStackOperation, ViewUndefined
from ..hostack.stack import StackSymbol, collapse, pop, push1, top1, top_symbol_or_none
from .machine import (
    Configuration,
    Emit,
    Machine,
    Push1,
    PushChild,
    Stuck,
    apply_op,
)

logger = logging.getLogger(__name__)


def pview(c: Configuration) -> list:
    """Node sequence of the top 1-stack, bottom first."""
    return [sym.node for sym in top1(c.stack).symbols()]


def long_oview(m: Machine, c: Configuration) -> list:
    return _oview(m, c, stop_at_app=False)


def oview(m: Machine, c: Configuration) -> list:
    """long_oview cut at the first App node met."""
    return _oview(m, c, stop_at_app=True)


def _oview(m: Machine, c: Configuration, stop_at_app: bool) -> list:
    table = m.symbols
    stack = c.stack
    if top_symbol_or_none(stack) is None:
        raise ViewUndefined("view of a configuration with an empty top 1-stack")
    out: list = []
    while True:
        sym = top_symbol_or_none(stack)
        if sym is None:
            break
        out.append(sym.node)
        if table.is_lambda(sym.node):
            if sym.link is None:
                break
            try:
                stack = collapse(stack)
            except InvalidStackOperation:
                break
            continue
        if stop_at_app and table[sym.node].kind is NodeKind.APP:
            break
        stack = pop(stack, 1)
    out.reverse()
    return out


@dataclass(frozen=True, slots=True)
class LogEntry:
    """A pushed node and the log index of its justifier (None for the root, Apps and terminals)."""

    index: int
    node: int
    justifier: int | None


@dataclass
class TraversalRun:
    log: list[LogEntry]
    final: Configuration | Stuck


def traversal_log(m: Machine, steps: int, branch: list[int] | None = None) -> TraversalRun:
    """
    Every node pushed along one branch of a CPDA(G) run, in push order.

    Each pushed symbol is tagged with its log index. A variable is justified
    by the occurrence `span` below it in the P-view; a lambda by the symbol it
    lands on (for prime lambdas the immediately preceding entry).
    """
    graph = m.symbols
    root = top_symbol_or_none(m.initial_stack)
    assert root is not None
    tagged = push1(pop(m.initial_stack, 1), StackSymbol(root.node, root.link, 0))
    log = [LogEntry(0, root.node, None)]
    c: Configuration | Stuck = Configuration(m.initial_state, tagged)
    choices = list(branch or [])
    for _ in range(steps):
        action = m.action(c)
        if action is None:
            c = Stuck("no transition")
            break
        if isinstance(action, Emit):
            if not action.branches:
                break
            i = choices.pop(0) if choices else len(action.branches)
            action = action.branches[i - 1]
        stack = c.stack
        try:
            for op in action.ops:
                if isinstance(op, Push1 | PushChild):
                    below = top_symbol_or_none(stack)
                    stack = apply_op(m, stack, op, tag=len(log))
                    log.append(_entry(graph, stack, below, len(log)))
                else:
                    stack = apply_op(m, stack, op)
        except InvalidStackOperation as e:
            c = Stuck(str(e))
            break
        c = Configuration(action.target, stack)
    logger.debug("[traversal_log] %d entries", len(log))
    return TraversalRun(log, c)


def _entry(graph: CompGraph, stack, below: StackSymbol | None, index: int) -> LogEntry:
    sym = top_symbol_or_none(stack)
    assert sym is not None
    node = graph[sym.node]
    if node.kind is NodeKind.LAMBDA:
        return LogEntry(index, node.id, below.tag if below is not None else None)
    if node.kind is NodeKind.VAR:
        return LogEntry(index, node.id, top1(stack)[-1 - node.span].tag)
    return LogEntry(index, node.id, None)


def pview_of_log(run: TraversalRun) -> list:
    """Log entries named by the tags on the final top 1-stack."""
    if isinstance(run.final, Stuck):
        raise ViewUndefined("the run got stuck")
    return [run.log[sym.tag].node for sym in top1(run.final.stack).symbols()]
