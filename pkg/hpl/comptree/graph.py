# hpl/comptree/graph.py
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from enum import StrEnum
from typing import TYPE_CHECKING

from ..core.terms import Lam, Sym, SymbolKind, Term, spine
from ..core.types import O, SimpleType, arrows, canonical_args, type_order
from ..scheme.scheme import lambda_of
from .eta import _eta

if TYPE_CHECKING:
    from ..scheme.scheme import RecursionScheme

logger = logging.getLogger(__name__)


class NodeKind(StrEnum):
    APP = "@"
    LAMBDA = "lambda"
    VAR = "var"
    TERMINAL = "terminal"


@dataclass
class CompNode:
    """
    One node of the computation graph.

    Children of an App are indexed from 0 (child 0 is the operator lambda);
    children of every other kind are indexed from 1.
    """

    id: int
    kind: NodeKind
    rule: str
    label: str = ""
    names: tuple[str, ...] = ()  # bound variables of a lambda
    children: list[int] = field(default_factory=list)
    parent: int | None = None
    order: int = 0
    type: SimpleType = O
    binder: int | None = None
    param_index: int = 0
    span: int = 0
    prime: bool = False
    backedge: bool = False  # App whose child 0 is a shared rule root

    @property
    def is_dummy(self) -> bool:
        return self.kind is NodeKind.LAMBDA and not self.names

    def render(self) -> str:
        if self.kind is NodeKind.LAMBDA:
            return "λ" + " ".join(self.names) if self.names else "λ."
        if self.kind is NodeKind.APP:
            return "@"
        return self.label


class CompGraph:
    """
    η-long rule trees of a scheme joined by back-edges.

    Every non-terminal occurrence is an App node whose child 0 is the root
    lambda of that non-terminal's rule. Immutable once built.
    """

    def __init__(self, nodes: list[CompNode], rule_root: dict[str, int], start: str) -> None:
        self.nodes = nodes
        self.rule_root = rule_root
        self.start = start
        self.root = rule_root[start]
        self.max_lambda_order = max(
            (n.order for n in nodes if n.kind is NodeKind.LAMBDA), default=0
        )

    def __len__(self) -> int:
        return len(self.nodes)

    def __getitem__(self, node: int) -> CompNode:
        return self.nodes[node]

    def child(self, node: int, i: int) -> int:
        """E_i(node)."""
        n = self.nodes[node]
        idx = i if n.kind is NodeKind.APP else i - 1
        if idx < 0 or idx >= len(n.children):
            raise IndexError(f"node {node} ({n.render()}) has no child {i}")
        return n.children[idx]

    def has_child(self, node: int, i: int) -> bool:
        n = self.nodes[node]
        idx = i if n.kind is NodeKind.APP else i - 1
        return 0 <= idx < len(n.children)

    # symbol-table protocol used by stacks

    def is_lambda(self, node: int) -> bool:
        return self.nodes[node].kind is NodeKind.LAMBDA

    def order(self, node: int) -> int:
        return self.nodes[node].order

    def is_prime(self, node: int) -> bool:
        return self.nodes[node].prime

    def label(self, node: int) -> str:
        return f"{self.nodes[node].render()}#{node}"

    def variables(self) -> list[CompNode]:
        return [n for n in self.nodes if n.kind is NodeKind.VAR]

    def path_to_binder(self, var: int) -> list[int]:
        """Nodes strictly between `var` and its binder, bottom-up."""
        n = self.nodes[var]
        out: list[int] = []
        cur = n.parent
        while cur is not None and cur != n.binder:
            out.append(cur)
            cur = self.nodes[cur].parent
        return out


def build_comp_graph(g: RecursionScheme) -> CompGraph:
    """Computation graph of `g`: one η-long tree per rule, back-edged at non-terminals."""
    nodes: list[CompNode] = []
    order_of_rules = [g.start, *[h for h in g.rules if h != g.start]]
    rule_root: dict[str, int] = {}
    for head in order_of_rules:
        rule = g.rules[head]
        names = rule.param_names
        node = CompNode(
            id=len(nodes),
            kind=NodeKind.LAMBDA,
            rule=head,
            names=names,
            type=g.nonterminals[head],
            order=_lambda_order([t for _, t in rule.params]),
        )
        nodes.append(node)
        rule_root[head] = node.id

    fresh = (f"_x{i}" for i in itertools.count(1))
    builder = _Builder(g, nodes, rule_root)
    for head in order_of_rules:
        eta = _eta(lambda_of(g, head), g.nonterminals[head], dict(g.env), fresh)
        builder.fill_root(rule_root[head], eta)

    graph = CompGraph(nodes, rule_root, g.start)
    logger.debug("[build_comp_graph] %d nodes, %d rules", len(nodes), len(rule_root))
    return graph


def _lambda_order(param_types: list[SimpleType]) -> int:
    if not param_types:
        return 0
    return 1 + max(type_order(t) for t in param_types)


class _Builder:
    def __init__(self, g: RecursionScheme, nodes: list[CompNode], rule_root: dict[str, int]) -> None:
        self.g = g
        self.nodes = nodes
        self.rule_root = rule_root

    def _new(self, **kw) -> CompNode:
        node = CompNode(id=len(self.nodes), **kw)
        self.nodes.append(node)
        return node

    def fill_root(self, root: int, eta: Lam) -> None:
        rule = self.nodes[root].rule
        scope = {name: (root, i) for i, name in enumerate(self.nodes[root].names, start=1)}
        types = dict(eta.params)
        body = self._spine(eta.body, root, rule, scope, types)
        self.nodes[root].children = [body]

    def _lambda(
        self,
        lam: Lam,
        parent: int,
        rule: str,
        scope: dict[str, tuple[int, int]],
        types: dict[str, SimpleType],
        prime: bool = False,
    ) -> int:
        node = self._new(
            kind=NodeKind.LAMBDA,
            rule=rule,
            names=tuple(n for n, _ in lam.params),
            parent=parent,
            order=_lambda_order([t for _, t in lam.params]),
            prime=prime,
        )
        inner = dict(scope)
        inner.update({name: (node.id, i) for i, (name, _) in enumerate(lam.params, start=1)})
        inner_types = dict(types)
        inner_types.update(lam.params)
        node.children = [self._spine(lam.body, node.id, rule, inner, inner_types)]
        return node.id

    def _spine(
        self,
        term: Term,
        parent: int,
        rule: str,
        scope: dict[str, tuple[int, int]],
        types: dict[str, SimpleType],
    ) -> int:
        head, args = spine(term)
        if isinstance(head, Lam):
            node = self._new(kind=NodeKind.APP, rule=rule, parent=parent)
            op = self._lambda(head, node.id, rule, scope, types, prime=True)
            node.children = [op]
        elif isinstance(head, Sym) and head.kind is SymbolKind.NONTERMINAL:
            node = self._new(kind=NodeKind.APP, rule=rule, parent=parent, backedge=True)
            target = self.rule_root[head.name]
            self.nodes[target].prime = True
            node.children = [target]
        elif isinstance(head, Sym) and head.kind is SymbolKind.TERMINAL:
            node = self._new(
                kind=NodeKind.TERMINAL,
                rule=rule,
                label=head.name,
                parent=parent,
                type=self.g.env[head.name],
            )
        elif isinstance(head, Sym):
            binder, index = scope[head.name]
            var_type = types[head.name]
            node = self._new(
                kind=NodeKind.VAR,
                rule=rule,
                label=head.name,
                parent=parent,
                type=var_type,
                order=type_order(var_type),
                binder=binder,
                param_index=index,
            )
            node.span = self._distance(node.id, binder)
            assert self.nodes[binder].order >= node.order + 1
        else:  # pragma: no cover
            raise TypeError(head)
        assert len(args) == len(canonical_args(self._head_type(head, types)))
        for arg in args:
            assert isinstance(arg, Lam)
            node.children.append(self._lambda(arg, node.id, rule, scope, types))
        return node.id

    def _head_type(self, head: Term, types: dict[str, SimpleType]) -> SimpleType:
        if isinstance(head, Sym):
            return types[head.name] if head.kind is SymbolKind.PARAM else self.g.env[head.name]
        assert isinstance(head, Lam)
        return arrows([t for _, t in head.params])

    def _distance(self, node: int, binder: int) -> int:
        steps = 0
        cur: int | None = node
        while cur != binder:
            assert cur is not None, "binder must lie inside the same rule tree"
            cur = self.nodes[cur].parent
            steps += 1
        return steps
