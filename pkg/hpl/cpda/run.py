# hpl/cpda/run.py
from __future__ import annotations

import logging
from collections import deque
from collections.abc import Iterator

from ..scheme.tree import CUT_LEAF, DIVERGENT_LEAF, ValueTree
from .machine import Configuration, Internal, Machine, Output, Stuck, step, trace_line

logger = logging.getLogger(__name__)


def run_to_output(m: Machine, c: Configuration | Stuck, budget: int) -> Output | Stuck | None:
    """Internal steps until an Output; None when the budget runs out."""
    for _ in range(budget):
        outcome = step(m, c)
        if isinstance(outcome, Internal):
            c = outcome.config
            continue
        return outcome
    return None


def generate_tree(m: Machine, depth: int, budget: int) -> ValueTree:
    """
    The value-tree prefix accepted by `m`, to `depth` levels.

    Branches are expanded breadth-first, each with its own budget of internal
    steps between outputs; running out of budget or getting stuck yields DIVERGENT.
    """
    if depth < 1 or budget < 1:
        raise ValueError("depth and budget must be positive")
    labels: dict[tuple[int, ...], str] = {}
    arity: dict[tuple[int, ...], int] = {}
    queue: deque[tuple[tuple[int, ...], Configuration | Stuck]] = deque([((), m.initial)])
    while queue:
        path, c = queue.popleft()
        if len(path) >= depth:
            labels[path] = CUT_LEAF.label
            continue
        outcome = run_to_output(m, c, budget)
        if not isinstance(outcome, Output):
            if outcome is None:
                logger.debug("[generate_tree] budget exhausted at %s", path)
            labels[path] = DIVERGENT_LEAF.label
            continue
        labels[path] = outcome.terminal
        arity[path] = len(outcome.successors)
        for i, succ in enumerate(outcome.successors, start=1):
            queue.append(((*path, i), succ))
    return _assemble(labels, arity)


def _assemble(labels: dict[tuple[int, ...], str], arity: dict[tuple[int, ...], int]) -> ValueTree:
    built: dict[tuple[int, ...], ValueTree] = {}
    # deepest paths first so every child exists before its parent
    for path in sorted(labels, key=len, reverse=True):
        n = arity.get(path, 0)
        built[path] = ValueTree(labels[path], tuple(built[(*path, i)] for i in range(1, n + 1)))
    return built[()]


def trace(
    m: Machine, steps: int, branch: list[int] | None = None, max_chars: int | None = 200
) -> Iterator[str]:
    """
    One line per → step along one branch.

    `branch` lists the child to follow at each output (1-based); once it is
    used up the last child is followed.
    """
    c: Configuration | Stuck = m.initial
    choices = list(branch or [])
    for _ in range(steps):
        if isinstance(c, Stuck):
            yield f"stuck | {c.reason}"
            return
        yield trace_line(m, c, max_chars)
        outcome = step(m, c)
        if isinstance(outcome, Internal):
            c = outcome.config
        elif isinstance(outcome, Output):
            if not outcome.successors:
                return
            i = choices.pop(0) if choices else len(outcome.successors)
            c = outcome.successors[i - 1]
        else:
            c = outcome
