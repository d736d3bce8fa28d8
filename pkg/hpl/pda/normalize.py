# hpl/pda/normalize.py
from __future__ import annotations

import logging
from collections import deque
from collections.abc import Hashable

from ..cpda.machine import (
    Action,
    Emit,
    Op,
    Ops,
    PdaMachine,
    PopJ,
    Push1,
    PushChild,
    PushJ,
    SimulatedCollapse,
)
from ..errors import NonFunctionDelta
from ..hostack.stack import empty_stack, replace_top1, top1

logger = logging.getLogger(__name__)

_STATIC = (Push1, PushJ, PopJ)


def is_normalized(pda: PdaMachine) -> bool:
    """Every transition is one static instruction or an output that leaves the stack alone."""
    if pda.initial_stack != empty_stack(pda.order):
        return False
    for action in pda.transitions.values():
        if isinstance(action, Emit):
            if any(b.ops for b in action.branches):
                return False
        elif len(action.ops) != 1 or not isinstance(action.ops[0], _STATIC):
            return False
    return True


def resolve_op(pda: PdaMachine, op: Op, top: Hashable) -> Op | None:
    """The static instruction `op` amounts to when `top` is on top; None when undefined."""
    match op:
        case Push1() | PushJ() | PopJ():
            return op
        case PushChild(index=i):
            if top is None or not pda.symbols.has_child(top, i):
                return None
            return Push1(pda.symbols.child(top, i))
        case SimulatedCollapse(uniform=uniform):
            if top is None or not pda.symbols.is_lambda(top):
                return None
            if not uniform and pda.symbols.is_prime(top):
                return PopJ(1)
            return PopJ(pda.order - pda.symbols.order(top) + 1)
    raise NonFunctionDelta(f"{op} is not a PDA instruction")


def normalize_pda(pda: PdaMachine) -> PdaMachine:
    """
    An equivalent PDA whose transitions each run a single static instruction.

    Instruction sequences are split over intermediate states named after the
    remaining suffix, dynamic instructions are resolved per top symbol, and a
    non-empty initial stack is built by a leading push from ⊥.
    """
    if is_normalized(pda):
        return pda
    states = list(pda.states)
    names: dict[tuple[tuple[Op, ...], str], str] = {}
    pending: deque[tuple[str, tuple[Op, ...], str]] = deque()
    counter = 0

    def state_for(ops: tuple[Op, ...], target: str) -> str:
        nonlocal counter
        if not ops:
            return target
        key = (ops, target)
        if key not in names:
            counter += 1
            name = f"s{counter}"
            while name in pda.states:
                name += "'"
            names[key] = name
            states.append(name)
            pending.append((name, ops, target))
        return names[key]

    transitions: dict[tuple[str, Hashable], Action] = {}
    for (q, a), action in pda.transitions.items():
        if isinstance(action, Emit):
            transitions[(q, a)] = Emit(
                action.terminal,
                tuple(Ops((), state_for(b.ops, b.target)) for b in action.branches),
            )
            continue
        if not action.ops:
            raise NonFunctionDelta(f"transition ({q}, {a}) runs no stack instruction")
        first = resolve_op(pda, action.ops[0], a)
        if first is not None:
            transitions[(q, a)] = Ops((first,), state_for(action.ops[1:], action.target))

    initial_state = pda.initial_state
    bottom = empty_stack(pda.order)
    if pda.initial_stack != bottom:
        initial_state = state_for(_initial_pushes(pda), pda.initial_state)

    tops: list[Hashable] = [None, *pda.alphabet]
    while pending:
        name, ops, target = pending.popleft()
        for a in tops:
            first = resolve_op(pda, ops[0], a)
            if first is not None:
                transitions[(name, a)] = Ops((first,), state_for(ops[1:], target))

    logger.debug(
        "[normalize_pda] %d -> %d states, %d transitions",
        len(pda.states),
        len(states),
        len(transitions),
    )
    return PdaMachine(
        order=pda.order,
        states=tuple(states),
        initial_state=initial_state,
        initial_stack=bottom,
        transitions=transitions,
        terminals=pda.terminals,
        alphabet=pda.alphabet,
        symbols=pda.symbols,
        name=pda.name,
    )


def _initial_pushes(pda: PdaMachine) -> tuple[Op, ...]:
    s = pda.initial_stack
    inner = top1(s)
    # only a single 1-stack sitting on ⊥ can be rebuilt by push_1 alone
    if s != replace_top1(empty_stack(pda.order), inner):
        raise NonFunctionDelta("initial stack must be a single 1-stack")
    return tuple(Push1(sym.node) for sym in inner.symbols())