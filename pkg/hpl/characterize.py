# hpl/characterize.py
from __future__ import annotations

import logging

from .comptree.binding import check_incremental_binding_static, check_incremental_binding_unfold
from .comptree.graph import build_comp_graph
from .errors import BudgetExceeded
from .models import CharacterizationReport
from .scheme.generate import generate_scheme
from .scheme.printer import format_scheme
from .scheme.safety import homogeneity, is_safe_knu

logger = logging.getLogger(__name__)


def characterize(count: int, seed: int = 0, unfold_limit: int = 200_000) -> CharacterizationReport:
    """
    Over `count` random schemes starting at `seed`, check that KNU safety
    coincides with homogeneity plus incremental binding, and that the static
    and unfolding binder checks (k = 2|N|) flag the same variables.
    """
    report = CharacterizationReport()
    for s in range(seed, seed + count):
        g = generate_scheme(s)
        graph = build_comp_graph(g)
        static = check_incremental_binding_static(graph)
        safe = is_safe_knu(g)
        homogeneous = all(homogeneity(g).values())
        report.schemes += 1
        report.safe += safe
        if safe != (homogeneous and not static):
            report.counterexamples.append(
                f"seed {s}: safe={safe} homogeneous={homogeneous} "
                f"incrementally-bound={not static}\n{format_scheme(g)}"
            )
        try:
            unfolded = check_incremental_binding_unfold(graph, 2 * len(g.nonterminals), unfold_limit)
        except BudgetExceeded as e:
            logger.warning("[characterize] seed %d: %s", s, e)
            continue
        if {v.variable_node for v in static} != {v.variable_node for v in unfolded}:
            report.unfold_disagreements.append(f"seed {s}\n{format_scheme(g)}")
    logger.info(
        "[characterize] %d schemes, %d safe, %d counterexamples",
        report.schemes,
        report.safe,
        len(report.counterexamples),
    )
    return report
