# hpl/workbench.py

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any

from .characterize import characterize as _characterize
from .comptree.binding import check_incremental_binding_static, check_incremental_binding_unfold
from .comptree.dot import to_dot
from .comptree.graph import CompGraph, build_comp_graph
from .config import EngineConfig, resolve_config, resolve_input
from .cpda.build import LinkConvention, build_cpda
from .cpda.machine import Configuration, Machine, PdaMachine
from .cpda.monitor import safety_monitor
from .cpda.run import generate_tree, trace
from .cpda.views import long_oview, oview, pview, traversal_log
from .engines.factory import create_engine
from .models import CharacterizationReport, CheckReport, LockstepReport, MonitorReport, RoundtripReport
from .pda.backtranslate import pda_to_hors
from .pda.derive import derive_pda
from .pda.lockstep import lockstep_check
from .pda.normalize import normalize_pda
from .pda.pdafile import load_pda
from .pda.roundtrip import roundtrip_safe_scheme
from .scheme.parser import load_scheme
from .scheme.rewrite import rewrite_tree
from .scheme.safety import homogeneity, is_safe_knu, syntactic_safety_check
from .scheme.scheme import RecursionScheme, dead_rules
from .scheme.tree import ValueTree

logger = logging.getLogger(__name__)


class Workbench:
    """
    Public facade.

    - check() runs homogeneity, syntactic safety and both binder checks
    - tree() generates value-tree prefixes with the rewrite, cpda or pda engine
    - to_pda() / to_hors() / roundtrip() move between schemes and automata
    - monitor() / lockstep() / views() inspect machine runs
    """

    def __init__(self, config: dict[str, Any] | EngineConfig | None = None) -> None:
        self.config = resolve_config(config)
        logger.debug("[Workbench.__init__] %s", self.config.model_dump())

    # -------------------------------------------------------
    # Inputs
    # -------------------------------------------------------
    def scheme(self, name: str | Path) -> RecursionScheme:
        return load_scheme(resolve_input(name, self.config))

    def pda(self, name: str | Path) -> PdaMachine:
        return load_pda(resolve_input(name, self.config))

    # -------------------------------------------------------
    # Checks
    # -------------------------------------------------------
    def check(self, g: RecursionScheme, unfold: bool = False) -> CheckReport:
        graph = build_comp_graph(g)
        ib = check_incremental_binding_static(graph)
        disagreements: list[int] = []
        if unfold:
            unfolded = check_incremental_binding_unfold(
                graph, 2 * len(g.nonterminals), self.config.unfold_limit
            )
            disagreements = sorted(
                {v.variable_node for v in unfolded} ^ {v.variable_node for v in ib}
            )
            if disagreements:
                logger.warning(
                    "[Workbench.check] static and unfolding binder checks disagree on nodes %s",
                    disagreements,
                )
        return CheckReport(
            homogeneous=homogeneity(g),
            safety_violations=syntactic_safety_check(g),
            ib_violations=ib,
            dead_rules=sorted(dead_rules(g)),
            order=g.order,
            unfold_checked=unfold,
            unfold_disagreements=disagreements,
        )

    def graph(self, g: RecursionScheme) -> CompGraph:
        return build_comp_graph(g)

    def dot(self, g: RecursionScheme, binders: bool = True) -> str:
        return to_dot(build_comp_graph(g), binders=binders)

    # -------------------------------------------------------
    # Trees
    # -------------------------------------------------------
    def tree(
        self,
        g: RecursionScheme,
        engine: str = "rewrite",
        depth: int | None = None,
        budget: int | None = None,
        check: bool = True,
    ) -> ValueTree:
        return create_engine(engine, g, check=check).generate(
            self.config.depth if depth is None else depth,
            self.config.budget if budget is None else budget,
        )

    def machine_tree(self, m: Machine, depth: int | None = None, budget: int | None = None) -> ValueTree:
        return generate_tree(
            m,
            self.config.depth if depth is None else depth,
            self.config.budget if budget is None else budget,
        )

    # -------------------------------------------------------
    # Automata
    # -------------------------------------------------------
    def cpda(self, g: RecursionScheme, convention: LinkConvention = "prime-link") -> Machine:
        return build_cpda(build_comp_graph(g), g.order, convention=convention)

    def to_pda(
        self, g: RecursionScheme, uniform: bool = False, check: bool = True, normalize: bool = False
    ) -> PdaMachine:
        graph = build_comp_graph(g)
        cpda = build_cpda(graph, g.order, convention="hmos" if uniform else "prime-link")
        pda = derive_pda(cpda, graph, uniform=uniform, check=check)
        return normalize_pda(pda) if normalize else pda

    def to_hors(self, pda: PdaMachine, every_state: bool = False) -> RecursionScheme:
        return pda_to_hors(pda, every_state)

    def roundtrip(
        self, g: RecursionScheme, depth: int | None = None, uniform: bool = False
    ) -> tuple[RecursionScheme, RoundtripReport]:
        depth = self.config.depth if depth is None else depth
        target = roundtrip_safe_scheme(g, uniform=uniform)
        source_tree = rewrite_tree(g, depth, self.config.budget)
        target_tree = rewrite_tree(target, depth, self.config.budget)
        report = RoundtripReport(
            depth=depth,
            source_order=g.order,
            target_order=target.order,
            target_rules=len(target.rules),
            passed=source_tree == target_tree,
            target_homogeneous=all(homogeneity(target).values()),
            target_safe=is_safe_knu(target),
            target_incrementally_bound=not check_incremental_binding_static(target),
            source_tree=source_tree.to_sexpr(),
            target_tree=target_tree.to_sexpr(),
        )
        logger.info("[Workbench.roundtrip] passed=%s", report.passed)
        return target, report

    # -------------------------------------------------------
    # Runs
    # -------------------------------------------------------
    def monitor(self, g: RecursionScheme, steps: int | None = None) -> MonitorReport:
        return safety_monitor(self.cpda(g), self._steps(steps))

    def lockstep(
        self, g: RecursionScheme, steps: int | None = None, uniform: bool = False, check: bool = True
    ) -> LockstepReport:
        graph = build_comp_graph(g)
        cpda = build_cpda(graph, g.order, convention="hmos" if uniform else "prime-link")
        pda = derive_pda(cpda, graph, uniform=uniform, check=check)
        return lockstep_check(cpda, pda, self._steps(steps))

    def views(self, g: RecursionScheme, steps: int | None = None, branch: list[int] | None = None) -> dict:
        """Traversal log along one branch plus the views of the configuration it ends in."""
        m = self.cpda(g)
        run = traversal_log(m, self._steps(steps), branch)
        out: dict[str, Any] = {
            "log": [[e.index, m.label(e.node), e.justifier] for e in run.log],
        }
        if isinstance(run.final, Configuration):
            out["pview"] = [m.label(x) for x in pview(run.final)]
            out["oview"] = [m.label(x) for x in oview(m, run.final)]
            out["long_oview"] = [m.label(x) for x in long_oview(m, run.final)]
        else:
            out["stuck"] = run.final.reason
        return out

    def trace(self, g: RecursionScheme, steps: int | None = None, branch: list[int] | None = None) -> list[str]:
        return list(trace(self.cpda(g), self._steps(steps), branch))

    def characterize(self, count: int = 500, seed: int | None = None) -> CharacterizationReport:
        return _characterize(count, self.config.seed if seed is None else seed, self.config.unfold_limit)

    def _steps(self, steps: int | None) -> int:
        return self.config.steps if steps is None else steps
