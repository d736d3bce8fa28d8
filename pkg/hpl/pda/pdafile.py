# hpl/pda/pdafile.py
from __future__ import annotations

import logging
import re
from collections.abc import Hashable
from pathlib import Path

from ..cpda.machine import Action, Emit, Ops, PdaMachine, PopJ, Push1, PushJ
from ..errors import NonFunctionDelta, PdaSyntaxError
from ..hostack.stack import empty_stack
from ..scheme.parser import IDENT
from .normalize import normalize_pda

logger = logging.getLogger(__name__)

BOTTOM_NAMES = frozenset({"⊥", "bot"})
_IDENT = re.compile(rf"{IDENT}$")
_RANKED = re.compile(rf"({IDENT}):(\d+)$")


def parse_pda(text: str, name: str = "") -> PdaMachine:
    """
    Parse the PDA file grammar.

    %order 2
    %states q0 q1          (the first state is initial)
    %stack a b             (⊥ is implicit; write it as ⊥ or bot)
    %alphabet g:2 a:0
    q0 ⊥ -> push1 a q1
    q1 a -> pushj 2 q0
    q0 a -> popj 1 q1
    q1 ⊥ -> output g q0 q1

    The machine starts at the initial state on ⊥_n.
    """
    order: int | None = None
    states: list[str] = []
    stack: list[str] = []
    alphabet: dict[str, int] = {}
    transitions: dict[tuple[str, Hashable], Action] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if words[0].startswith("%"):
            args = words[1:]
            match words[0]:
                case "%order":
                    if len(args) != 1 or not args[0].isdigit() or int(args[0]) < 1:
                        raise PdaSyntaxError("%order takes one positive integer", lineno)
                    order = int(args[0])
                case "%states":
                    states.extend(_idents(args, lineno))
                case "%stack":
                    stack.extend(_idents(args, lineno))
                case "%alphabet":
                    for word in args:
                        m = _RANKED.match(word)
                        if not m:
                            raise PdaSyntaxError(f"expected name:rank, got {word!r}", lineno)
                        alphabet[m.group(1)] = int(m.group(2))
                case other:
                    raise PdaSyntaxError(f"unknown directive {other}", lineno)
            continue
        if order is None or not states:
            raise PdaSyntaxError("transitions must follow %order and %states", lineno)
        key, action = _transition(words, lineno, order, states, stack, alphabet)
        if key in transitions:
            raise NonFunctionDelta(f"line {lineno}: second transition for ({key[0]}, {words[1]})")
        transitions[key] = action

    if order is None:
        raise PdaSyntaxError("missing %order", 1)
    if not states:
        raise PdaSyntaxError("missing %states", 1)
    logger.debug("[parse_pda] order %d, %d states, %d transitions", order, len(states), len(transitions))
    return PdaMachine(
        order=order,
        states=tuple(states),
        initial_state=states[0],
        initial_stack=empty_stack(order),
        transitions=transitions,
        terminals=alphabet,
        alphabet=tuple(stack),
        name=name,
    )


def load_pda(path: str | Path) -> PdaMachine:
    p = Path(path)
    return parse_pda(p.read_text(encoding="utf-8"), name=p.stem)


def _idents(words: list[str], lineno: int) -> list[str]:
    for w in words:
        if not _IDENT.match(w):
            raise PdaSyntaxError(f"bad name {w!r}", lineno)
    return words


def _transition(
    words: list[str],
    lineno: int,
    order: int,
    states: list[str],
    stack: list[str],
    alphabet: dict[str, int],
) -> tuple[tuple[str, Hashable], Action]:
    if len(words) < 4 or words[2] != "->":
        raise PdaSyntaxError("expected 'state symbol -> instruction ...'", lineno)
    q, a, instr, rest = words[0], words[1], words[3], words[4:]

    def state(name: str) -> str:
        if name not in states:
            raise PdaSyntaxError(f"undeclared state {name!r}", lineno)
        return name

    def level(text: str) -> int:
        if not text.isdigit() or not 1 <= int(text) <= order:
            raise PdaSyntaxError(f"stack level {text!r} outside 1..{order}", lineno)
        return int(text)

    top: str | None = None if a in BOTTOM_NAMES else a
    if top is not None and top not in stack:
        raise PdaSyntaxError(f"undeclared stack symbol {a!r}", lineno)
    key = (state(q), top)

    match instr, rest:
        case "push1", [b, target]:
            if b not in stack:
                raise PdaSyntaxError(f"undeclared stack symbol {b!r}", lineno)
            return key, Ops((Push1(b),), state(target))
        case "pushj", [j, target]:
            if level(j) < 2:
                raise PdaSyntaxError("pushj needs a level of at least 2", lineno)
            return key, Ops((PushJ(int(j)),), state(target))
        case "popj", [j, target]:
            return key, Ops((PopJ(level(j)),), state(target))
        case "output", [f, *targets]:
            if f not in alphabet:
                raise PdaSyntaxError(f"undeclared terminal {f!r}", lineno)
            if len(targets) != alphabet[f]:
                raise PdaSyntaxError(
                    f"output {f} needs {alphabet[f]} successor states, got {len(targets)}", lineno
                )
            return key, Emit(f, tuple(Ops((), state(t)) for t in targets))
    raise PdaSyntaxError(f"cannot read instruction {' '.join(words[3:])!r}", lineno)


def _letter(node: Hashable) -> str:
    if node is None:
        return "⊥"
    return f"n{node}" if isinstance(node, int) else str(node)


def format_pda(pda: PdaMachine, header: str | None = None) -> str:
    """Render the normalized form of `pda` in the PDA file grammar."""
    normal = normalize_pda(pda)
    lines: list[str] = []
    if header:
        lines.extend(f"# {h}" for h in header.splitlines())
    states = [normal.initial_state, *(q for q in normal.states if q != normal.initial_state)]
    lines.append(f"%order {normal.order}")
    lines.append("%states " + " ".join(states))
    if normal.alphabet:
        lines.append("%stack " + " ".join(_letter(a) for a in normal.alphabet))
    if normal.terminals:
        lines.append("%alphabet " + " ".join(f"{f}:{r}" for f, r in normal.terminals.items()))
    lines.append("")
    for (q, a), action in normal.transitions.items():
        lhs = f"{q} {_letter(a)} ->"
        if isinstance(action, Emit):
            lines.append(f"{lhs} output {' '.join([action.terminal, *(b.target for b in action.branches)])}")
            continue
        match action.ops[0]:
            case Push1(node=b):
                lines.append(f"{lhs} push1 {_letter(b)} {action.target}")
            case PushJ(j=j):
                lines.append(f"{lhs} pushj {j} {action.target}")
            case PopJ(j=j):
                lines.append(f"{lhs} popj {j} {action.target}")
    return "\n".join(lines) + "\n"
