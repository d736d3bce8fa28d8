# hpl/pda/roundtrip.py
from __future__ import annotations

import logging

from ..comptree.graph import build_comp_graph
from ..cpda.build import build_cpda
from ..scheme.scheme import RecursionScheme
from .backtranslate import pda_to_hors
from .derive import derive_pda

logger = logging.getLogger(__name__)


def roundtrip_safe_scheme(g: RecursionScheme, uniform: bool = False) -> RecursionScheme:
    """
    A safe scheme generating the same tree as the incrementally-bound `g`:
    CPDA(G), then PDA(G), then back to a scheme.
    """
    graph = build_comp_graph(g)
    cpda = build_cpda(graph, g.order, convention="hmos" if uniform else "prime-link")
    pda = derive_pda(cpda, graph, uniform=uniform)
    out = pda_to_hors(pda)
    logger.info("[roundtrip_safe_scheme] %d rules -> %d rules", len(g.rules), len(out.rules))
    return out
