# hpl/core/types.py
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cache

from pydantic import BaseModel, ConfigDict, field_validator

from ..errors import SchemeSyntaxError


@dataclass(frozen=True, slots=True)
class SimpleType:
    """
    A simple type over the single atom o.

    `arg`/`result` are both None for o, both set for an arrow.
    Build values with `O` and `arrow()` so equal types are the same object.
    """

    arg: SimpleType | None = None
    result: SimpleType | None = None

    @property
    def is_ground(self) -> bool:
        return self.arg is None

    @property
    def args(self) -> tuple[SimpleType, ...]:
        return canonical_args(self)

    @property
    def arity(self) -> int:
        return len(canonical_args(self))

    @property
    def order(self) -> int:
        return type_order(self)

    def __str__(self) -> str:
        return format_type(self)

    def __repr__(self) -> str:
        return f"SimpleType({format_type(self)})"


O = SimpleType()


@cache
def arrow(arg: SimpleType, result: SimpleType) -> SimpleType:
    return SimpleType(arg, result)


def arrows(args: tuple[SimpleType, ...] | list[SimpleType], result: SimpleType = O) -> SimpleType:
    """A1 -> ... -> An -> result."""
    t = result
    for a in reversed(list(args)):
        t = arrow(a, t)
    return t


@cache
def canonical_args(t: SimpleType) -> tuple[SimpleType, ...]:
    out: list[SimpleType] = []
    while t.arg is not None:
        out.append(t.arg)
        assert t.result is not None
        t = t.result
    return tuple(out)


@cache
def type_order(t: SimpleType) -> int:
    if t.arg is None:
        return 0
    assert t.result is not None
    return max(type_order(t.arg) + 1, type_order(t.result))


@cache
def is_homogeneous(t: SimpleType) -> bool:
    args = canonical_args(t)
    orders = [type_order(a) for a in args]
    if any(orders[i] < orders[i + 1] for i in range(len(orders) - 1)):
        return False
    return all(is_homogeneous(a) for a in args)


def ground_type(rank: int) -> SimpleType:
    """o -> ... -> o -> o with `rank` arguments."""
    return arrows([O] * rank)


def format_type(t: SimpleType) -> str:
    if t.arg is None:
        return "o"
    assert t.result is not None
    left = format_type(t.arg)
    if t.arg.arg is not None:
        left = f"({left})"
    return f"{left} -> {format_type(t.result)}"


class RankedSymbol(BaseModel):
    """
    A terminal symbol.

    - name: identifier
    - rank: number of children; the implied type is o -> ... -> o -> o
    """

    model_config = ConfigDict(frozen=True)

    name: str
    rank: int

    @field_validator("rank")
    @classmethod
    def _non_negative(cls, v: int) -> int:
        if v < 0:
            raise ValueError("rank must be non-negative")
        return v

    @property
    def type(self) -> SimpleType:
        return ground_type(self.rank)


# ----- type syntax ----- #

_TYPE_TOKEN = re.compile(r"\s*(->|→|[(),]|o)")


def parse_type(text: str, line: int = 1, column: int = 1) -> SimpleType:
    """
    Parse `o`, right-associative `->` (or `→`) and parentheses.
    The tuple notation ((o,o),o) is read as (o -> o) -> o.
    """
    tokens: list[tuple[str, int]] = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TYPE_TOKEN.match(text, pos)
        if not m:
            raise SchemeSyntaxError(f"bad type syntax near {text[pos:]!r}", line, column + pos)
        tokens.append((m.group(1), column + m.start(1)))
        pos = m.end()

    idx = 0

    def peek() -> str | None:
        return tokens[idx][0] if idx < len(tokens) else None

    def expect(tok: str) -> None:
        nonlocal idx
        if peek() != tok:
            col = tokens[idx][1] if idx < len(tokens) else column + len(text)
            raise SchemeSyntaxError(f"expected {tok!r} in type", line, col)
        idx += 1

    def parse_arrow() -> SimpleType:
        nonlocal idx
        left = parse_atom()
        if peek() in ("->", "→"):
            idx += 1
            return arrow(left, parse_arrow())
        return left

    def parse_atom() -> SimpleType:
        nonlocal idx
        tok = peek()
        if tok == "o":
            idx += 1
            return O
        if tok == "(":
            idx += 1
            items = [parse_arrow()]
            while peek() == ",":
                idx += 1
                items.append(parse_arrow())
            expect(")")
            if len(items) == 1:
                return items[0]
            # tuple notation: (A1, ..., An, B) means A1 -> ... -> An -> B
            return arrows(items[:-1], items[-1])
        col = tokens[idx][1] if idx < len(tokens) else column + len(text)
        raise SchemeSyntaxError("expected a type", line, col)

    result = parse_arrow()
    if idx != len(tokens):
        raise SchemeSyntaxError("trailing input in type", line, tokens[idx][1])
    return result
