# tests/test_comptree.py
import pytest

from hpl.comptree import (
    NodeKind,
    build_comp_graph,
    check_incremental_binding_static,
    check_incremental_binding_unfold,
    eta_long,
    is_eta_long,
    is_incrementally_bound,
    to_dot,
)
from hpl.core.terms import Lam, Sym, SymbolKind
from hpl.core.types import O, arrow, parse_type
from hpl.errors import BudgetExceeded, TypeMismatch
from hpl.scheme.scheme import lambda_of

from .conftest import IB_SCHEMES

ALL_SCHEMES = [*IB_SCHEMES, "example2", "unsafe_witness", "divergent"]


def test_eta_long_of_a_terminal():
    env = {"h": arrow(O, O)}
    lam = eta_long(Sym("h", SymbolKind.TERMINAL), arrow(O, O), env)
    assert isinstance(lam, Lam)
    assert [name for name, _ in lam.params] == ["_x1"]
    assert is_eta_long(lam)
    assert str(lam) == "λ_x1. h (λ. _x1)"


def test_eta_long_rejects_wrong_type():
    with pytest.raises(TypeMismatch):
        eta_long(Sym("h"), O, {"h": arrow(O, O)})


@pytest.mark.parametrize("name", ALL_SCHEMES)
def test_rule_lambdas_are_eta_long(scheme, name):
    g = scheme(name)
    for head in g.rules:
        assert is_eta_long(eta_long(lambda_of(g, head), g.nonterminals[head], g.env))


@pytest.mark.parametrize("name", ALL_SCHEMES)
def test_graph_shape(scheme, name):
    g = scheme(name)
    graph = build_comp_graph(g)
    assert graph[graph.root].kind is NodeKind.LAMBDA
    assert set(graph.rule_root) == set(g.rules)
    for node in graph.nodes:
        if node.kind is NodeKind.LAMBDA:
            assert len(node.children) == 1
        if node.kind is NodeKind.APP:
            assert graph.is_lambda(graph.child(node.id, 0))
        if node.kind is NodeKind.TERMINAL:
            assert len(node.children) == g.rank(node.label)
        for child in node.children:
            if node.kind is not NodeKind.LAMBDA:
                assert graph.is_lambda(child)


@pytest.mark.parametrize("name", ALL_SCHEMES)
def test_binders_and_spans(scheme, name):
    graph = build_comp_graph(scheme(name))
    for v in graph.variables():
        binder = graph[v.binder]
        assert binder.kind is NodeKind.LAMBDA
        assert binder.names[v.param_index - 1] == v.label
        assert binder.order >= v.order + 1
        assert v.span >= 1
        assert len(graph.path_to_binder(v.id)) == v.span - 1


def test_back_edges_mark_prime_lambdas(scheme):
    graph = build_comp_graph(scheme("example2"))
    for name in ("H", "F"):
        assert graph.is_prime(graph.rule_root[name])
    assert not graph.is_prime(graph.rule_root["S"])
    backedges = [n for n in graph.nodes if n.backedge]
    assert {graph.child(n.id, 0) for n in backedges} == {graph.rule_root["H"], graph.rule_root["F"]}


def test_child_out_of_range(scheme):
    graph = build_comp_graph(scheme("trivial"))
    with pytest.raises(IndexError):
        graph.child(graph.root, 2)
    assert not graph.has_child(graph.root, 2)


def test_example2_is_not_incrementally_bound(scheme):
    graph = build_comp_graph(scheme("example2"))
    violations = check_incremental_binding_static(graph)
    assert len(violations) == 1
    v = violations[0]
    assert (v.rule, v.variable, v.variable_order, v.lambda_order) == ("H", "z", 0, 1)
    assert v.binder_node == graph.rule_root["H"]


@pytest.mark.parametrize("name", IB_SCHEMES)
def test_incrementally_bound_fixtures(scheme, name):
    assert is_incrementally_bound(scheme(name))


@pytest.mark.parametrize("name", ALL_SCHEMES)
def test_unfolding_agrees_with_static_check(scheme, name):
    g = scheme(name)
    graph = build_comp_graph(g)
    static = {v.variable_node for v in check_incremental_binding_static(graph)}
    unfolded = {v.variable_node for v in check_incremental_binding_unfold(graph, 2 * len(g.nonterminals))}
    assert static == unfolded


def test_unfolding_budget(scheme):
    with pytest.raises(BudgetExceeded):
        check_incremental_binding_unfold(scheme("order3_loop"), 6, node_limit=50)


def test_lambda_orders(scheme):
    g = scheme("order3_loop")
    graph = build_comp_graph(g)
    assert graph[graph.rule_root["Twice2"]].order == parse_type(
        "((o -> o) -> o -> o) -> (o -> o) -> o -> o"
    ).order
    assert graph.max_lambda_order == 3


def test_dot(scheme):
    graph = build_comp_graph(scheme("example2"))
    text = to_dot(graph)
    assert text.startswith("digraph comptree {")
    assert text.rstrip().endswith("}")
    assert "style=dashed" in text
    assert "style=dotted" not in text
    assert "style=dotted" in to_dot(graph, binders=True)
