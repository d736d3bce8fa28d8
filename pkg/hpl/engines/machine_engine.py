# hpl/engines/machine_engine.py
from __future__ import annotations

import logging

from ..comptree.graph import build_comp_graph
from ..cpda.build import build_cpda
from ..cpda.machine import Machine, PdaMachine
from ..cpda.run import generate_tree
from ..pda.derive import derive_pda
from ..pda.run import run_pda
from ..scheme.scheme import RecursionScheme
from ..scheme.tree import ValueTree
from .base import BaseTreeEngine

logger = logging.getLogger(__name__)


class CpdaEngine(BaseTreeEngine):
    """Runs CPDA(G)."""

    name = "cpda"

    def __init__(self, scheme: RecursionScheme) -> None:
        self.graph = build_comp_graph(scheme)
        self.machine: Machine = build_cpda(self.graph, scheme.order)

    def generate(self, depth: int, budget: int) -> ValueTree:
        return generate_tree(self.machine, depth, budget)


class PdaEngine(BaseTreeEngine):
    """
    Runs PDA(G), the collapse-free simulation.

    Refuses schemes that are not incrementally bound unless `check` is off.
    """

    name = "pda"

    def __init__(self, scheme: RecursionScheme, check: bool = True) -> None:
        self.graph = build_comp_graph(scheme)
        cpda = build_cpda(self.graph, scheme.order)
        self.machine: PdaMachine = derive_pda(cpda, self.graph, check=check)
        if not check:
            logger.warning("[PdaEngine] binding check skipped; the tree may be wrong")

    def generate(self, depth: int, budget: int) -> ValueTree:
        return run_pda(self.machine, depth, budget)
