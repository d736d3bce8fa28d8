# hpl/hostack/text.py
from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..errors import StackParseError
from .stack import HoStack, Link, StackSymbol, make_stack

_TOKEN = re.compile(r"\s*(\[|\]|[^\s\[\]^]+(?:\^\(\s*\d+\s*,\s*\d+\s*\))?)")
_SYMBOL = re.compile(r"([^\s\[\]^]+)(?:\^\(\s*(\d+)\s*,\s*(\d+)\s*\))?$")


def parse_stack(text: str) -> HoStack:
    """
    Parse the bracket notation, e.g. `[[a^(2,1) b][c]]`.

    The stack order is the bracket nesting depth; `[]` is ⊥1, `[[]]` is ⊥2.
    Symbols are raw letters (strings).
    """
    tokens = _TOKEN.findall(text)
    if "".join(tokens) != re.sub(r"\s+", "", text):
        raise StackParseError(f"cannot tokenize stack {text!r}")
    pos = 0

    def parse() -> tuple[int, list]:
        nonlocal pos
        if pos >= len(tokens) or tokens[pos] != "[":
            raise StackParseError(f"expected '[' in {text!r}")
        pos += 1
        items: list = []
        orders: set[int] = set()
        while pos < len(tokens) and tokens[pos] != "]":
            if tokens[pos] == "[":
                order, inner = parse()
                orders.add(order)
                items.append(inner)
            else:
                items.append(_symbol(tokens[pos]))
                orders.add(0)
                pos += 1
        if pos >= len(tokens):
            raise StackParseError(f"unbalanced brackets in {text!r}")
        pos += 1
        if len(orders) > 1:
            raise StackParseError(f"mixed nesting in {text!r}")
        inner_order = orders.pop() if orders else 0
        return inner_order + 1, items

    order, items = parse()
    if pos != len(tokens):
        raise StackParseError(f"trailing input in {text!r}")
    return make_stack(order, items)


def _symbol(token: str) -> StackSymbol:
    m = _SYMBOL.match(token)
    if not m:
        raise StackParseError(f"bad stack symbol {token!r}")
    link = Link(int(m.group(2)), int(m.group(3))) if m.group(2) else None
    return StackSymbol(m.group(1), link)


@dataclass
class LetterTable:
    """
    Symbol table for raw-letter stacks.

    - lambdas: letter -> lambda order; letters not listed are non-lambda symbols
    - primes: letters standing for prime lambdas
    """

    lambdas: dict[str, int] = field(default_factory=dict)
    primes: set[str] = field(default_factory=set)

    def is_lambda(self, node) -> bool:
        return node in self.lambdas

    def order(self, node) -> int:
        return self.lambdas.get(node, 0)

    def is_prime(self, node) -> bool:
        return node in self.primes

    def label(self, node) -> str:
        return str(node)

    @property
    def max_lambda_order(self) -> int:
        return max(self.lambdas.values(), default=0)
