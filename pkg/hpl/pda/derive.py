# hpl/pda/derive.py
from __future__ import annotations

import logging

from ..comptree.binding import check_incremental_binding_static
from ..comptree.graph import CompGraph
from ..cpda.machine import (
    Action,
    Collapse,
    Emit,
    Machine,
    Op,
    Ops,
    PdaMachine,
    Push1,
    PushChild,
    SimulatedCollapse,
)
from ..errors import NotIncrementallyBound
from ..hostack.stack import erase_links

logger = logging.getLogger(__name__)


def derive_pda(
    m: Machine, graph: CompGraph, uniform: bool = False, check: bool = True
) -> PdaMachine:
    """
    PDA(G): CPDA(G) with links dropped and every collapse replaced by a pop.

    The pop is pop_1 when the lambda on top is prime and pop_{n-ord+1}
    otherwise; `uniform` always uses pop_{n-ord+1} and is meant for machines
    built with convention="hmos". With `check`, schemes that are not
    incrementally bound are refused.
    """
    if check:
        violations = check_incremental_binding_static(graph)
        if violations:
            first = violations[0]
            raise NotIncrementallyBound(
                f"{len(violations)} binding violation(s); first: {first.variable} in rule "
                f"{first.rule} is bound past {first.lambda_label} of order {first.lambda_order}",
                violations,
            )
    transitions = {key: _strip(action, uniform) for key, action in m.transitions.items()}
    logger.debug("[derive_pda] %d transitions, uniform=%s", len(transitions), uniform)
    return PdaMachine(
        order=m.order,
        states=m.states,
        initial_state=m.initial_state,
        initial_stack=erase_links(m.initial_stack),
        transitions=transitions,
        terminals=m.terminals,
        alphabet=m.alphabet,
        symbols=m.symbols,
        name=m.name.replace("CPDA", "PDA", 1),
    )


def _strip(action: Action, uniform: bool) -> Action:
    if isinstance(action, Emit):
        return Emit(action.terminal, tuple(_strip_ops(b, uniform) for b in action.branches))
    return _strip_ops(action, uniform)


def _strip_ops(ops: Ops, uniform: bool) -> Ops:
    return Ops(tuple(_strip_op(op, uniform) for op in ops.ops), ops.target)


def _strip_op(op: Op, uniform: bool) -> Op:
    match op:
        case Collapse():
            return SimulatedCollapse(uniform)
        case Push1(node=node):
            return Push1(node)
        case PushChild(index=i):
            return PushChild(i)
    return op
