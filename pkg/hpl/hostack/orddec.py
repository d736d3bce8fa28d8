# hpl/hostack/orddec.py
from __future__ import annotations

import logging
from dataclasses import dataclass, field

from ..errors import InvalidStackOperation
from .stack import (
    HoStack,
    Stack1,
    StackSymbol,
    SymbolTable,
    collapse,
    prefix_at_top,
    render_stack,
    top1,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class DecEntry:
    symbol: StackSymbol
    position: int  # index in the top 1-stack, 0 = bottom


def order_decomposition(s: HoStack, l: int, table: SymbolTable) -> list[DecEntry]:
    """
    orddec_l over the top 1-stack, outermost entry first.

    Scanning right to left, take the last lambda of order above the current
    threshold, then raise the threshold to its order.
    """
    out: list[DecEntry] = []
    threshold = l
    ceiling = table.max_lambda_order
    cell: Stack1 | None = top1(s)
    while cell is not None and cell.symbol is not None and threshold < ceiling:
        node = cell.symbol.node
        if table.is_lambda(node) and table.order(node) > threshold:
            out.append(DecEntry(cell.symbol, cell.size - 1))
            threshold = table.order(node)
        cell = cell.below
    out.reverse()
    return out


def order_decomposition_recursive(s: HoStack, l: int, table: SymbolTable) -> list[DecEntry]:
    """Reference version following the recursive definition literally."""
    symbols = top1(s).symbols()

    def dec(end: int, threshold: int) -> list[DecEntry]:
        for pos in range(end - 1, -1, -1):
            node = symbols[pos].node
            if table.is_lambda(node) and table.order(node) > threshold:
                return [*dec(pos, table.order(node)), DecEntry(symbols[pos], pos)]
        return []

    return dec(len(symbols), l)


@dataclass
class SafetyResult:
    ok: bool
    witness: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


class SafetyChecker:
    """
    l-safety of stacks, memoized on (stack, l) across calls.

    `n` is the order of the machine the stacks come from; clause 2 only
    collapses entries with n - ord + 1 <= ord(stack). Absent links satisfy the
    height condition and are never collapsed. The memo is dropped whenever it
    reaches `max_entries`.
    """

    def __init__(self, table: SymbolTable, n: int, max_entries: int = 200_000) -> None:
        if max_entries < 1:
            raise ValueError("max_entries must be positive")
        self.table = table
        self.n = n
        self.max_entries = max_entries
        self._memo: dict[tuple[HoStack, int], SafetyResult] = {}

    @property
    def memo_size(self) -> int:
        return len(self._memo)

    def _room(self) -> None:
        if len(self._memo) >= self.max_entries:
            logger.debug("[SafetyChecker] memo full at %d entries, clearing", len(self._memo))
            self._memo.clear()

    def is_l_safe(self, s: HoStack, l: int) -> SafetyResult:
        # iterative walk over the (stack, threshold) obligations
        root = (s, l)
        parent: dict[tuple[HoStack, int], tuple[tuple[HoStack, int], str] | None] = {root: None}
        pending = [root]
        while pending:
            key = pending.pop()
            cached = self._memo.get(key)
            if cached is not None:
                if not cached.ok:
                    return self._fail(root, parent, key, cached.witness)
                continue
            failure, obligations = self._local(*key)
            if failure is not None:
                self._room()
                self._memo[key] = SafetyResult(False, [failure])
                return self._fail(root, parent, key, [failure])
            for sub, why in obligations:
                if sub not in parent:
                    parent[sub] = (key, why)
                    pending.append(sub)
        for key in parent:
            self._room()
            self._memo.setdefault(key, SafetyResult(True))
        return SafetyResult(True)

    def _fail(self, root, parent, key, tail: list[str]) -> SafetyResult:
        path: list[str] = []
        cur = key
        while cur != root:
            prev, why = parent[cur]
            path.append(why)
            cur = prev
        path.reverse()
        # everything on the path to a failure fails too
        witness = path + tail
        self._room()
        self._memo[root] = SafetyResult(False, witness)
        return SafetyResult(False, witness)

    def _local(self, s: HoStack, l: int) -> tuple[str | None, list[tuple[tuple[HoStack, int], str]]]:
        dec = order_decomposition(s, l, self.table)
        label = self.table.label
        for e in dec:
            if e.symbol.link is not None and e.symbol.link.height != 1:
                return (
                    f"{label(e.symbol.node)}^{e.symbol.link} at position {e.position} of "
                    f"orddec_{l} has height {e.symbol.link.height} in {render_stack(s, label)}",
                    [],
                )
        obligations: list[tuple[tuple[HoStack, int], str]] = []
        for idx, e in enumerate(dec):
            if e.symbol.link is None:
                continue
            o = self.table.order(e.symbol.node)
            if self.n - o + 1 > s.order:
                continue
            try:
                collapsed = collapse(prefix_at_top(s, e.position))
            except InvalidStackOperation as err:
                return f"collapse at {label(e.symbol.node)} (position {e.position}) fails: {err}", []
            threshold = l if idx == len(dec) - 1 else self.table.order(dec[idx + 1].symbol.node)
            obligations.append(
                (
                    (collapsed, threshold),
                    f"collapse at {label(e.symbol.node)} (position {e.position}) must be {threshold}-safe",
                )
            )
        return None, obligations


def is_l_safe(s: HoStack, l: int, table: SymbolTable, n: int | None = None) -> SafetyResult:
    """One-off l-safety check; `n` defaults to the stack's own order."""
    return SafetyChecker(table, n if n is not None else s.order).is_l_safe(s, l)


def is_safe(s: HoStack, table: SymbolTable, n: int | None = None) -> SafetyResult:
    return is_l_safe(s, 0, table, n)
