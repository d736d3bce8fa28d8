# hpl/core/__init__.py
from .terms import App, AppTerm, Lam, Sym, SymbolKind, Term, apply, check_term, spine
from .types import (
    O,
    RankedSymbol,
    SimpleType,
    arrow,
    arrows,
    format_type,
    is_homogeneous,
    parse_type,
    type_order,
)

__all__ = [
    "O",
    "App",
    "AppTerm",
    "Lam",
    "RankedSymbol",
    "SimpleType",
    "Sym",
    "SymbolKind",
    "Term",
    "apply",
    "arrow",
    "arrows",
    "check_term",
    "format_type",
    "is_homogeneous",
    "parse_type",
    "spine",
    "type_order",
]
