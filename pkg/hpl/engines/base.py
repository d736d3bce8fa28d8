# hpl/engines/base.py
from __future__ import annotations

from abc import ABC, abstractmethod

from ..scheme.tree import ValueTree


class BaseTreeEngine(ABC):
    """Minimal interface for value-tree generators."""

    name: str = ""

    @abstractmethod
    def generate(self, depth: int, budget: int) -> ValueTree:
        """
        Depth-truncated value tree. CUT marks the depth limit and DIVERGENT a
        branch that produced no terminal within `budget` steps.
        """
        raise NotImplementedError
