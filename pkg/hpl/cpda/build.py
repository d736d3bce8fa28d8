# hpl/cpda/build.py
from __future__ import annotations

import logging
from typing import Literal

from ..comptree.graph import CompGraph, NodeKind
from ..errors import OrderOverflow
from ..hostack.stack import Link, StackSymbol, empty_stack, push1
from .machine import Action, Collapse, Emit, Machine, Op, Ops, PopJ, Push1, PushChild, PushJ

logger = logging.getLogger(__name__)

STATE = "q0"

type LinkConvention = Literal["prime-link", "hmos"]


def machine_order(scheme_order: int) -> int:
    """Stack order of CPDA(G); order-0 schemes still get a 1-stack."""
    return max(1, scheme_order)


def build_cpda(graph: CompGraph, n: int, convention: LinkConvention = "prime-link") -> Machine:
    """
    CPDA(G) over the nodes of `graph`, for a scheme of order `n`.

    With convention="prime-link", App pushes its prime lambda with link (1,1) and
    every variable step ends in a collapse. With convention="hmos", the prime
    lambda is pushed without a link and a variable whose binder is prime pops
    one symbol further instead of collapsing.
    """
    order = machine_order(n)
    transitions: dict[tuple[str, int], Action] = {}
    terminals: dict[str, int] = {}
    for node in graph.nodes:
        match node.kind:
            case NodeKind.APP:
                link = Link(1, 1) if convention == "prime-link" else None
                action: Action = Ops((Push1(graph.child(node.id, 0), link),), STATE)
            case NodeKind.LAMBDA:
                action = Ops((Push1(graph.child(node.id, 1)),), STATE)
            case NodeKind.TERMINAL:
                rank = len(node.children)
                terminals[node.label] = rank
                action = Emit(
                    node.label, tuple(Ops((PushChild(i),), STATE) for i in range(1, rank + 1))
                )
            case NodeKind.VAR:
                action = Ops(_variable_ops(graph, node.id, order, convention), STATE)
        transitions[(STATE, node.id)] = action

    stack = push1(empty_stack(order), StackSymbol(graph.root))
    logger.debug(
        "[build_cpda] order %d, %d transitions, convention %s", order, len(transitions), convention
    )
    return Machine(
        order=order,
        states=(STATE,),
        initial_state=STATE,
        initial_stack=stack,
        transitions=transitions,
        terminals=terminals,
        alphabet=tuple(range(len(graph))),
        symbols=graph,
        name=f"CPDA({graph.start})",
    )


def _variable_ops(graph: CompGraph, var: int, n: int, convention: LinkConvention) -> tuple[Op, ...]:
    node = graph[var]
    if node.order >= n:
        raise OrderOverflow(
            f"variable {node.label} of order {node.order} in an order-{n} machine"
        )
    assert node.binder is not None
    if convention == "hmos" and graph.is_prime(node.binder):
        back: tuple[Op, ...] = (PopJ(1),) * (node.span + 1)
    else:
        back = (*(PopJ(1),) * node.span, Collapse())
    if node.order == 0:
        return (*back, PushChild(node.param_index))
    j = n - node.order + 1
    return (PushJ(j), *back, PushChild(node.param_index, j))
