# hpl/engines/rewrite_engine.py
from __future__ import annotations

from ..scheme.rewrite import rewrite_tree
from ..scheme.scheme import RecursionScheme
from ..scheme.tree import ValueTree
from .base import BaseTreeEngine


class RewriteEngine(BaseTreeEngine):
    """Outermost rewriting of the scheme itself."""

    name = "rewrite"

    def __init__(self, scheme: RecursionScheme) -> None:
        self.scheme = scheme

    def generate(self, depth: int, budget: int) -> ValueTree:
        return rewrite_tree(self.scheme, depth, budget)
