# hpl/scheme/tree.py
from __future__ import annotations

import re
from dataclasses import dataclass

CUT = "CUT"
DIVERGENT = "DIVERGENT"
MARKERS = frozenset({CUT, DIVERGENT})


@dataclass(frozen=True, slots=True)
class ValueTree:
    """
    A finite prefix of a value tree.

    Terminal nodes carry rank-many children. The two marker leaves are CUT
    (depth limit reached) and DIVERGENT (step budget exhausted, or a stuck branch).
    """

    label: str
    children: tuple[ValueTree, ...] = ()

    @property
    def is_marker(self) -> bool:
        return self.label in MARKERS and not self.children

    def to_sexpr(self) -> str:
        return to_sexpr(self)

    def __str__(self) -> str:
        return to_sexpr(self)


CUT_LEAF = ValueTree(CUT)
DIVERGENT_LEAF = ValueTree(DIVERGENT)


def to_sexpr(tree: ValueTree) -> str:
    parts: list[str] = []
    stack: list[ValueTree | str] = [tree]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            parts.append(item)
            continue
        if parts and parts[-1] != "(":
            parts.append(" ")
        parts.append("(")
        parts.append(item.label)
        stack.append(")")
        stack.extend(reversed(item.children))
    return "".join(parts)


_SEXPR_TOKEN = re.compile(r"\s*([()]|[^\s()]+)")


def parse_sexpr(text: str) -> ValueTree:
    tokens = _SEXPR_TOKEN.findall(text)
    pos = 0

    def node() -> ValueTree:
        nonlocal pos
        if pos >= len(tokens) or tokens[pos] != "(":
            raise ValueError(f"expected '(' at token {pos} of {text!r}")
        pos += 1
        label = tokens[pos]
        pos += 1
        kids: list[ValueTree] = []
        while tokens[pos] != ")":
            kids.append(node())
        pos += 1
        return ValueTree(label, tuple(kids))

    tree = node()
    if pos != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return tree


def is_approximation(small: ValueTree, big: ValueTree) -> bool:
    """True if `big` refines `small`: markers in `small` match any subtree."""
    pairs = [(small, big)]
    while pairs:
        a, b = pairs.pop()
        if a.is_marker:
            continue
        if a.label != b.label or len(a.children) != len(b.children):
            return False
        pairs.extend(zip(a.children, b.children, strict=True))
    return True


def first_difference(a: ValueTree, b: ValueTree) -> tuple[int, ...] | None:
    """Path (child indices from 1) to the first node where the trees disagree."""
    pending: list[tuple[ValueTree, ValueTree, tuple[int, ...]]] = [(a, b, ())]
    while pending:
        x, y, path = pending.pop(0)
        if x.label != y.label or len(x.children) != len(y.children):
            return path
        for i, (cx, cy) in enumerate(zip(x.children, y.children, strict=True), start=1):
            pending.append((cx, cy, (*path, i)))
    return None
