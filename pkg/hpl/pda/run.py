# hpl/pda/run.py
from __future__ import annotations

from typing import TYPE_CHECKING

from ..cpda.machine import PdaMachine
from ..cpda.run import generate_tree

if TYPE_CHECKING:
    from ..scheme.tree import ValueTree


def run_pda(pda: PdaMachine, depth: int, budget: int) -> ValueTree:
    """Value-tree prefix of a collapse-free machine; stuck or starved branches are DIVERGENT."""
    if not isinstance(pda, PdaMachine):
        raise TypeError(f"run_pda needs a PdaMachine, got {type(pda).__name__}")
    return generate_tree(pda, depth, budget)
