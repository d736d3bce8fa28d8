# hpl/scheme/rewrite.py
from __future__ import annotations

import logging
from typing import TYPE_CHECKING

from ..core.terms import Sym, SymbolKind, Term, apply, spine, substitute
from .tree import CUT_LEAF, DIVERGENT_LEAF, ValueTree

if TYPE_CHECKING:
    from .scheme import RecursionScheme

logger = logging.getLogger(__name__)


def rewrite_tree(g: RecursionScheme, depth: int, budget: int) -> ValueTree:
    """
    Depth-truncated value tree of `g` by outermost rewriting.

    `depth` counts emitted node levels: depth 1 shows the root terminal with
    CUT children. `budget` bounds rule expansions spent exposing one node.
    """
    if depth < 1 or budget < 1:
        raise ValueError("depth and budget must be positive")
    return _expand(g, Sym(g.start, SymbolKind.NONTERMINAL), depth, budget)


def head_normalize(g: RecursionScheme, term: Term, budget: int) -> tuple[str, list[Term]] | None:
    """Rewrite the head redex until a terminal is exposed; None once `budget` runs out."""
    steps = 0
    while True:
        head, args = spine(term)
        if not isinstance(head, Sym):
            raise TypeError(f"unexpected head {head!r}")
        if head.kind is SymbolKind.TERMINAL:
            return head.name, args
        if head.kind is not SymbolKind.NONTERMINAL:
            raise ValueError(f"free parameter {head.name} at head position")
        if steps >= budget:
            return None
        rule = g.rules[head.name]
        m = len(rule.params)
        body = substitute(rule.body, dict(zip(rule.param_names, args[:m], strict=True)))
        term = apply(body, args[m:])
        steps += 1


def _expand(g: RecursionScheme, term: Term, depth: int, budget: int) -> ValueTree:
    if depth == 0:
        return CUT_LEAF
    normal = head_normalize(g, term, budget)
    if normal is None:
        logger.debug("[rewrite_tree] budget %d exhausted", budget)
        return DIVERGENT_LEAF
    label, args = normal
    return ValueTree(label, tuple(_expand(g, a, depth - 1, budget) for a in args))
