# hpl/cpda/machine.py
from __future__ import annotations

import logging
from collections.abc import Hashable, Mapping
from dataclasses import dataclass, field
from typing import Any

from ..errors import InvalidStackOperation
from ..hostack.stack import (
    HoStack,
    Link,
    StackSymbol,
    collapse,
    pop,
    push1,
    push_j,
    render_stack,
    top_symbol_or_none,
)

logger = logging.getLogger(__name__)


# ----- stack instructions ----- #


@dataclass(frozen=True, slots=True)
class Push1:
    """push_1 of a fixed symbol, with an optional link."""

    node: Hashable
    link: Link | None = None

    def __str__(self) -> str:
        return f"push1 {self.node}" + (f"^{self.link}" if self.link else "")


@dataclass(frozen=True, slots=True)
class PushChild:
    """push_1 of E_i(top); the link is (link_order, 1) when link_order is set."""

    index: int
    link_order: int | None = None

    def __str__(self) -> str:
        suffix = f"^({self.link_order},1)" if self.link_order else ""
        return f"push1 E{self.index}(top){suffix}"


@dataclass(frozen=True, slots=True)
class PushJ:
    j: int

    def __str__(self) -> str:
        return f"push{self.j}"


@dataclass(frozen=True, slots=True)
class PopJ:
    j: int

    def __str__(self) -> str:
        return f"pop{self.j}"


@dataclass(frozen=True, slots=True)
class Collapse:
    def __str__(self) -> str:
        return "collapse"


@dataclass(frozen=True, slots=True)
class SimulatedCollapse:
    """
    Link-free stand-in for collapse at a lambda on top: pop_1 when the lambda
    is prime, pop_{n-ord+1} otherwise. `uniform` always takes the second form.
    """

    uniform: bool = False

    def __str__(self) -> str:
        return "pop-for-collapse" + (" (uniform)" if self.uniform else "")


type Op = Push1 | PushChild | PushJ | PopJ | Collapse | SimulatedCollapse


@dataclass(frozen=True, slots=True)
class Ops:
    """Run `ops` in order, then move to state `target`."""

    ops: tuple[Op, ...]
    target: str

    def __str__(self) -> str:
        body = "; ".join(str(o) for o in self.ops) or "skip"
        return f"{body} -> {self.target}"


@dataclass(frozen=True, slots=True)
class Emit:
    """Output `terminal`; branch i continues with `branches[i-1]`."""

    terminal: str
    branches: tuple[Ops, ...]

    def __str__(self) -> str:
        return f"output {self.terminal} [" + " | ".join(str(b) for b in self.branches) + "]"


type Action = Ops | Emit


# ----- machines and configurations ----- #


@dataclass(frozen=True, slots=True)
class Configuration:
    state: str
    stack: HoStack


@dataclass(frozen=True, slots=True)
class Internal:
    config: Configuration


@dataclass(frozen=True, slots=True)
class Stuck:
    reason: str


@dataclass(frozen=True, slots=True)
class Output:
    terminal: str
    successors: tuple[Configuration | Stuck, ...]


type StepOutcome = Internal | Output | Stuck


@dataclass(frozen=True)
class Machine:
    """
    An order-n (collapsible) pushdown automaton.

    - transitions: (state, top node or None for an empty top 1-stack) -> Action
    - terminals: output alphabet with ranks
    - symbols: symbol table resolving dynamic instructions (PushChild, SimulatedCollapse)
    - alphabet: stack alphabet, without the implicit bottom
    """

    order: int
    states: tuple[str, ...]
    initial_state: str
    initial_stack: HoStack
    transitions: Mapping[tuple[str, Any], Action]
    terminals: Mapping[str, int]
    alphabet: tuple[Hashable, ...] = ()
    symbols: Any = field(default=None, compare=False, repr=False)
    name: str = ""

    @property
    def initial(self) -> Configuration:
        return Configuration(self.initial_state, self.initial_stack)

    def action(self, c: Configuration) -> Action | None:
        top = top_symbol_or_none(c.stack)
        return self.transitions.get((c.state, top.node if top is not None else None))

    def label(self, node: Hashable) -> str:
        if node is None:
            return "⊥"
        if self.symbols is not None:
            return self.symbols.label(node)
        return str(node)


@dataclass(frozen=True)
class PdaMachine(Machine):
    """A Machine whose instructions never read or create links and never collapse."""

    def __post_init__(self) -> None:
        for action in self.transitions.values():
            for ops in _all_ops(action):
                for op in ops.ops:
                    if isinstance(op, Collapse):
                        raise ValueError("collapse is not a PDA instruction")
                    if isinstance(op, Push1) and op.link is not None:
                        raise ValueError("PDA symbols carry no links")
                    if isinstance(op, PushChild) and op.link_order is not None:
                        raise ValueError("PDA symbols carry no links")


def _all_ops(action: Action) -> tuple[Ops, ...]:
    return action.branches if isinstance(action, Emit) else (action,)


# ----- execution ----- #


def apply_op(m: Machine, stack: HoStack, op: Op, tag: int | None = None) -> HoStack:
    """One instruction; InvalidStackOperation when it is undefined on `stack`."""
    match op:
        case Push1(node=node, link=link):
            return push1(stack, StackSymbol(node, link, tag))
        case PushChild(index=i, link_order=lo):
            top = top_symbol_or_none(stack)
            if top is None or not m.symbols.has_child(top.node, i):
                raise InvalidStackOperation(f"no child {i} to push")
            link = Link(lo, 1) if lo is not None else None
            return push1(stack, StackSymbol(m.symbols.child(top.node, i), link, tag))
        case PushJ(j=j):
            return push_j(stack, j)
        case PopJ(j=j):
            return pop(stack, j)
        case Collapse():
            return collapse(stack)
        case SimulatedCollapse(uniform=uniform):
            return pop(stack, simulated_pop_order(m, stack, uniform))
    raise TypeError(f"unknown instruction {op!r}")


def simulated_pop_order(m: Machine, stack: HoStack, uniform: bool = False) -> int:
    top = top_symbol_or_none(stack)
    if top is None or not m.symbols.is_lambda(top.node):
        raise InvalidStackOperation("collapse stand-in needs a lambda on top")
    if not uniform and m.symbols.is_prime(top.node):
        return 1
    return m.order - m.symbols.order(top.node) + 1


def run_ops(m: Machine, stack: HoStack, ops: tuple[Op, ...]) -> HoStack:
    for op in ops:
        stack = apply_op(m, stack, op)
    return stack


def step(m: Machine, c: Configuration | Stuck) -> StepOutcome:
    """One → step."""
    if isinstance(c, Stuck):
        return c
    action = m.action(c)
    if action is None:
        top = top_symbol_or_none(c.stack)
        return Stuck(f"no transition for ({c.state}, {m.label(top.node if top else None)})")
    try:
        if isinstance(action, Ops):
            return Internal(Configuration(action.target, run_ops(m, c.stack, action.ops)))
    except InvalidStackOperation as e:
        return Stuck(f"{type(e).__name__}: {e}")
    successors: list[Configuration | Stuck] = []
    for branch in action.branches:
        try:
            successors.append(Configuration(branch.target, run_ops(m, c.stack, branch.ops)))
        except InvalidStackOperation as e:
            successors.append(Stuck(f"{type(e).__name__}: {e}"))
    return Output(action.terminal, tuple(successors))


@dataclass(frozen=True, slots=True)
class MicroStep:
    op: Op
    before: HoStack
    after: HoStack | None  # None when the instruction is undefined


def micro_steps(m: Machine, c: Configuration) -> list[MicroStep]:
    """The instructions of one internal → step with every intermediate stack."""
    action = m.action(c)
    if not isinstance(action, Ops):
        return []
    out: list[MicroStep] = []
    stack = c.stack
    for op in action.ops:
        try:
            nxt = apply_op(m, stack, op)
        except InvalidStackOperation:
            out.append(MicroStep(op, stack, None))
            break
        out.append(MicroStep(op, stack, nxt))
        stack = nxt
    return out


def trace_line(m: Machine, c: Configuration, max_chars: int | None = 200) -> str:
    """`state | top-node | action | stack`, with the stack optionally truncated."""
    top = top_symbol_or_none(c.stack)
    action = m.action(c)
    stack = render_stack(c.stack, m.label)
    if max_chars is not None and len(stack) > max_chars:
        stack = "…" + stack[-max_chars:]
    return f"{c.state} | {m.label(top.node if top else None)} | {action or 'stuck'} | {stack}"
