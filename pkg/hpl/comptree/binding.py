# hpl/comptree/binding.py
from __future__ import annotations

import logging
from dataclasses import dataclass

from ..errors import BudgetExceeded
from ..models import IBViolation
from ..scheme.scheme import RecursionScheme
from .graph import CompGraph, NodeKind, build_comp_graph

logger = logging.getLogger(__name__)

DEFAULT_UNFOLD_LIMIT = 200_000


def _graph_of(g: RecursionScheme | CompGraph) -> CompGraph:
    return g if isinstance(g, CompGraph) else build_comp_graph(g)


def _violation(graph: CompGraph, var: int, binder: int, lam: int) -> IBViolation:
    v = graph[var]
    return IBViolation(
        rule=v.rule,
        variable=v.label,
        variable_node=var,
        binder_node=binder,
        lambda_node=lam,
        lambda_label=graph[lam].render(),
        variable_order=v.order,
        lambda_order=graph[lam].order,
    )


def check_incremental_binding_static(g: RecursionScheme | CompGraph) -> list[IBViolation]:
    """Every lambda strictly between a variable and its binder must not outrank the variable."""
    graph = _graph_of(g)
    out: list[IBViolation] = []
    for v in graph.variables():
        assert v.binder is not None
        for node in graph.path_to_binder(v.id):
            if graph[node].kind is NodeKind.LAMBDA and graph[node].order > v.order:
                out.append(_violation(graph, v.id, v.binder, node))
    return out


def is_incrementally_bound(g: RecursionScheme | CompGraph) -> bool:
    return not check_incremental_binding_static(g)


@dataclass(slots=True)
class _UNode:
    orig: int
    parent: _UNode | None
    binder: _UNode | None = None


def check_incremental_binding_unfold(
    g: RecursionScheme | CompGraph,
    k: int,
    node_limit: int = DEFAULT_UNFOLD_LIMIT,
) -> list[IBViolation]:
    """
    Unfold the computation tree of Λ(S) `k` times and check every variable
    against the literal rule: its binder is the first lambda above it whose
    order exceeds the variable's. Non-terminal occurrences left after `k`
    unfoldings stay opaque. Violations are reported on original node ids,
    one per (variable node, lambda node) pair.
    """
    graph = _graph_of(g)
    found: dict[tuple[int, int], IBViolation] = {}
    count = 0
    # (original node, parent copy, per-instance copy table, unfolding level)
    work: list[tuple[int, _UNode | None, dict[int, _UNode], int]] = [(graph.root, None, {}, 0)]
    variables: list[_UNode] = []
    while work:
        orig, parent, instance, level = work.pop()
        count += 1
        if count > node_limit:
            raise BudgetExceeded(
                f"unfolded tree exceeds {node_limit} nodes (k={k}); raise the unfold limit"
            )
        node = graph[orig]
        copy = _UNode(orig, parent)
        instance[orig] = copy
        if node.kind is NodeKind.VAR:
            assert node.binder is not None
            copy.binder = instance[node.binder]
            variables.append(copy)
        for idx, child in enumerate(node.children):
            if node.kind is NodeKind.APP and idx == 0 and node.backedge:
                if level < k:
                    work.append((child, copy, {}, level + 1))
                continue
            work.append((child, copy, instance, level))

    for copy in variables:
        v = graph[copy.orig]
        cur = copy.parent
        while cur is not None:
            n = graph[cur.orig]
            if n.kind is NodeKind.LAMBDA and n.order > v.order:
                if cur is not copy.binder:
                    key = (copy.orig, cur.orig)
                    assert copy.binder is not None
                    found.setdefault(key, _violation(graph, copy.orig, copy.binder.orig, cur.orig))
                break
            cur = cur.parent
    logger.debug("[check_incremental_binding_unfold] k=%d, %d nodes", k, count)
    return sorted(found.values(), key=IBViolation.key)
