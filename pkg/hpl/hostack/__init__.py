# hpl/hostack/__init__.py
from .orddec import (
    DecEntry,
    SafetyChecker,
    SafetyResult,
    is_l_safe,
    is_safe,
    order_decomposition,
    order_decomposition_recursive,
)
from .stack import (
    EMPTY1,
    HoStack,
    Link,
    Stack1,
    StackN,
    StackSymbol,
    SymbolTable,
    collapse,
    empty_stack,
    erase_links,
    link_erased_equal,
    make_stack,
    pop,
    prefix_at,
    prefix_at_top,
    push1,
    push_j,
    render_stack,
    renumber,
    strict_prefix_at,
    top,
    top1,
    top_symbol,
)
from .text import LetterTable, parse_stack

__all__ = [
    "EMPTY1",
    "DecEntry",
    "HoStack",
    "LetterTable",
    "Link",
    "SafetyChecker",
    "SafetyResult",
    "Stack1",
    "StackN",
    "StackSymbol",
    "SymbolTable",
    "collapse",
    "empty_stack",
    "erase_links",
    "is_l_safe",
    "is_safe",
    "link_erased_equal",
    "make_stack",
    "order_decomposition",
    "order_decomposition_recursive",
    "parse_stack",
    "pop",
    "prefix_at",
    "prefix_at_top",
    "push1",
    "push_j",
    "render_stack",
    "renumber",
    "strict_prefix_at",
    "top",
    "top1",
    "top_symbol",
]
