# hpl/hostack/stack.py
from __future__ import annotations

from collections.abc import Hashable, Iterator
from dataclasses import dataclass, field, replace
from typing import Protocol

from pyrsistent import PVector, pvector

from ..errors import AbsentLink, DanglingLink, EmptyPop, EmptyTop, OccurrenceNotFound


@dataclass(frozen=True, slots=True)
class Link:
    """A link to the `height`-th element below at level `order`: a^(order, height)."""

    order: int
    height: int

    def __str__(self) -> str:
        return f"({self.order},{self.height})"


@dataclass(frozen=True, slots=True)
class StackSymbol:
    """
    An order-1 stack element: a graph node id (or a raw letter) with an optional link.

    `tag` is bookkeeping for traversal logs and is ignored by equality.
    """

    node: Hashable
    link: Link | None = None
    tag: int | None = field(default=None, compare=False)

    def erased(self) -> StackSymbol:
        return self if self.link is None else replace(self, link=None)


class SymbolTable(Protocol):
    """What the stack layer needs to know about the symbols it holds."""

    def is_lambda(self, node) -> bool: ...

    def order(self, node) -> int: ...

    def is_prime(self, node) -> bool: ...

    def label(self, node) -> str: ...

    @property
    def max_lambda_order(self) -> int: ...


# ----- order-1 stacks ----- #


class Stack1:
    """
    A persistent order-1 stack stored as a chain of cells, top first.

    push/pop/prefix are O(1) and the structural hash is cached per cell, which
    keeps memoized safety checks cheap on long P-views.
    """

    __slots__ = ("_hash", "below", "link_orders", "size", "symbol")

    order = 1

    def __init__(self, symbol: StackSymbol | None = None, below: Stack1 | None = None) -> None:
        self.symbol = symbol
        self.below = below
        if symbol is None:
            self.size = 0
            self.link_orders = 0
            self._hash = hash(("⊥1",))
        else:
            assert below is not None
            self.size = below.size + 1
            self.link_orders = below.link_orders | (1 << symbol.link.order if symbol.link else 0)
            self._hash = hash((symbol, below._hash))

    def __len__(self) -> int:
        return self.size

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Stack1):
            return NotImplemented
        a: Stack1 | None = self
        b: Stack1 | None = other
        while a is not None and b is not None and a is not b:
            if a.size != b.size or a._hash != b._hash or a.symbol != b.symbol:
                return False
            a, b = a.below, b.below
        return a is b

    def __iter__(self) -> Iterator[StackSymbol]:
        """Bottom to top."""
        return iter(self.symbols())

    def symbols(self) -> list[StackSymbol]:
        out: list[StackSymbol] = []
        cell: Stack1 | None = self
        while cell is not None and cell.symbol is not None:
            out.append(cell.symbol)
            cell = cell.below
        out.reverse()
        return out

    def upto(self, pos: int) -> Stack1:
        """The prefix whose top is the symbol at `pos` (0 = bottom)."""
        if pos < 0 or pos >= self.size:
            raise OccurrenceNotFound(f"position {pos} outside a 1-stack of size {self.size}")
        cell = self
        for _ in range(self.size - 1 - pos):
            assert cell.below is not None
            cell = cell.below
        return cell

    def __getitem__(self, pos: int) -> StackSymbol:
        if pos < 0:
            pos += self.size
        sym = self.upto(pos).symbol
        assert sym is not None
        return sym

    def __repr__(self) -> str:
        return f"Stack1({render_stack(self)})"


EMPTY1 = Stack1()


def stack1(symbols: list[StackSymbol] | tuple[StackSymbol, ...]) -> Stack1:
    s = EMPTY1
    for sym in symbols:
        s = Stack1(sym, s)
    return s


# ----- higher-order stacks ----- #


class StackN:
    """An order-m stack (m >= 2): a non-empty persistent vector of order-(m-1) stacks."""

    __slots__ = ("_hash", "items", "order")

    def __init__(self, order: int, items: PVector) -> None:
        assert order >= 2 and len(items) >= 1
        self.order = order
        self.items = items
        self._hash: int | None = None

    def __len__(self) -> int:
        return len(self.items)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.order, tuple(self.items)))
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, StackN):
            return NotImplemented
        return (
            self.order == other.order
            and len(self.items) == len(other.items)
            and hash(self) == hash(other)
            and all(a == b for a, b in zip(self.items, other.items, strict=True))
        )

    def top_item(self) -> HoStack:
        return self.items[-1]

    def with_top(self, item: HoStack) -> StackN:
        return StackN(self.order, self.items.set(len(self.items) - 1, item))

    def __repr__(self) -> str:
        return f"StackN({render_stack(self)})"


type HoStack = Stack1 | StackN


def empty_stack(n: int) -> HoStack:
    """⊥_n."""
    if n < 1:
        raise ValueError("stack order must be at least 1")
    s: HoStack = EMPTY1
    for m in range(2, n + 1):
        s = StackN(m, pvector([s]))
    return s


def make_stack(order: int, items: list) -> HoStack:
    """Build from nested Python lists; order-1 lists hold StackSymbols."""
    if order == 1:
        return stack1(items)
    if not items:
        raise ValueError("an order-m stack (m >= 2) is never empty")
    return StackN(order, pvector(make_stack(order - 1, i) for i in items))


# ----- operations ----- #


def push1(s: HoStack, sym: StackSymbol) -> HoStack:
    if isinstance(s, Stack1):
        return Stack1(sym, s)
    return s.with_top(push1(s.top_item(), sym))


def pop(s: HoStack, i: int) -> HoStack:
    """pop_i; EmptyPop when the top i-stack cannot lose an element."""
    if i < 1 or i > s.order:
        raise ValueError(f"pop_{i} on an order-{s.order} stack")
    if isinstance(s, Stack1):
        if s.below is None:
            raise EmptyPop("pop_1 on an empty 1-stack")
        return s.below
    if i == s.order:
        if len(s.items) < 2:
            raise EmptyPop(f"pop_{i} would empty an order-{i} stack")
        return StackN(s.order, s.items[:-1])
    return s.with_top(pop(s.top_item(), i))


def top(s: HoStack, i: int) -> HoStack | StackSymbol:
    """top_i: the top (i-1)-stack, or the top symbol for i = 1. Links are kept verbatim."""
    if i < 1 or i > s.order:
        raise ValueError(f"top_{i} on an order-{s.order} stack")
    if isinstance(s, Stack1):
        if s.symbol is None:
            raise EmptyTop("top_1 of an empty 1-stack")
        return s.symbol
    if i == s.order:
        return s.top_item()
    return top(s.top_item(), i)


def top_symbol(s: HoStack) -> StackSymbol:
    sym = top(s, 1)
    assert isinstance(sym, StackSymbol)
    return sym


def top_symbol_or_none(s: HoStack) -> StackSymbol | None:
    return top1(s).symbol


def top1(s: HoStack) -> Stack1:
    """The top 1-stack (top_2 for order >= 2)."""
    while isinstance(s, StackN):
        s = s.top_item()
    return s


def replace_top1(s: HoStack, new: Stack1) -> HoStack:
    if isinstance(s, Stack1):
        return new
    return s.with_top(replace_top1(s.top_item(), new))


def renumber(s: HoStack, j: int) -> HoStack:
    """s^<j>: every link (j, k) becomes (j, k+1)."""
    if isinstance(s, Stack1):
        if not s.link_orders & (1 << j):
            return s
        syms = [
            replace(x, link=Link(j, x.link.height + 1)) if x.link and x.link.order == j else x
            for x in s.symbols()
        ]
        return stack1(syms)
    return StackN(s.order, pvector(renumber(t, j) for t in s.items))


def push_j(s: HoStack, j: int) -> HoStack:
    """Duplicate the top (j-1)-stack, renumbering order-j links in the copy."""
    if j < 2 or j > s.order:
        raise ValueError(f"push_{j} on an order-{s.order} stack")
    assert isinstance(s, StackN)
    if s.order == j:
        return StackN(s.order, s.items.append(renumber(s.top_item(), j)))
    return s.with_top(push_j(s.top_item(), j))


def collapse(s: HoStack) -> HoStack:
    """pop_o^h where (o, h) is the top symbol's link; DanglingLink when it points below the stack."""
    sym = top_symbol(s)
    if sym.link is None:
        raise AbsentLink(f"collapse at {sym.node!r}, whose link is absent")
    if sym.link.order > s.order:
        raise DanglingLink(f"link {sym.link} of {sym.node!r} in an order-{s.order} stack")
    target = s
    try:
        for _ in range(sym.link.height):
            target = pop(target, sym.link.order)
    except EmptyPop:
        raise DanglingLink(
            f"link {sym.link} of {sym.node!r} reaches below {render_stack(s)}"
        ) from None
    return target


type Occurrence = tuple[int, ...]


def prefix_at(s: HoStack, occ: Occurrence, strict: bool = False) -> HoStack:
    """
    Stack prefix at an occurrence given as indices from the outermost level
    down to the order-1 position.
    """
    if len(occ) != s.order:
        raise OccurrenceNotFound(f"occurrence {occ} does not address an order-{s.order} stack")
    idx = occ[0]
    if isinstance(s, Stack1):
        cell = s.upto(idx)
        if strict:
            assert cell.below is not None
            return cell.below
        return cell
    if idx < 0 or idx >= len(s.items):
        raise OccurrenceNotFound(f"index {idx} outside an order-{s.order} stack")
    inner = prefix_at(s.items[idx], occ[1:], strict)
    return StackN(s.order, s.items[:idx].append(inner))


def strict_prefix_at(s: HoStack, occ: Occurrence) -> HoStack:
    return prefix_at(s, occ, strict=True)


def prefix_at_top(s: HoStack, pos: int, strict: bool = False) -> HoStack:
    cell = top1(s).upto(pos)
    if strict:
        assert cell.below is not None
        cell = cell.below
    return replace_top1(s, cell)


def erase_links(s: HoStack) -> HoStack:
    if isinstance(s, Stack1):
        if not s.link_orders:
            return s
        return stack1([x.erased() for x in s.symbols()])
    return StackN(s.order, pvector(erase_links(t) for t in s.items))


def link_erased_equal(a: HoStack, b: HoStack) -> bool:
    return a.order == b.order and erase_links(a) == erase_links(b)


def iter_symbols(s: HoStack) -> Iterator[StackSymbol]:
    if isinstance(s, Stack1):
        yield from s.symbols()
        return
    for t in s.items:
        yield from iter_symbols(t)


def max_link_height(s: HoStack) -> int:
    return max((x.link.height for x in iter_symbols(s) if x.link), default=0)


def render_stack(s: HoStack, label=None) -> str:
    """`[[a^(2,1) b][c]]`; `label` maps a node to its printed name."""
    name = label or str
    if isinstance(s, Stack1):
        parts = []
        for x in s.symbols():
            text = name(x.node)
            parts.append(f"{text}^{x.link}" if x.link else text)
        return "[" + " ".join(parts) + "]"
    return "[" + "".join(render_stack(t, label) for t in s.items) + "]"
