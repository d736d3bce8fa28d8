# tests/test_stack_lemmas.py
from collections import deque

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hpl.comptree import build_comp_graph
from hpl.cpda import build_cpda
from hpl.cpda.machine import Configuration, Internal, Output, step
from hpl.errors import EmptyPop, InvalidStackOperation
from hpl.hostack import (
    DecEntry,
    LetterTable,
    Link,
    SafetyChecker,
    Stack1,
    StackSymbol,
    collapse,
    empty_stack,
    is_l_safe,
    order_decomposition,
    order_decomposition_recursive,
    pop,
    prefix_at,
    push1,
    push_j,
    renumber,
    strict_prefix_at,
    top,
    top1,
)

from .conftest import REACHABLE_STEPS

LEMMA_TABLE = LetterTable(lambdas={"a": 1, "b": 2, "c": 3})
LAMBDAS = "abc"
PLAIN = "ef"


def _fits(s, j: int) -> bool:
    """A (j, 1) link on the next push1 points inside the stack."""
    if j == 1:
        return True
    try:
        pop(s, j)
    except EmptyPop:
        return False
    return True


@st.composite
def linked_stacks(draw, min_order: int = 1):
    """
    (n, s) where s is built from ⊥n by random stack instructions.

    A lambda of order o is pushed with the link (n - o + 1, 1), or without a
    link when that would dangle; plain letters get any fitting (j, 1) link.
    """
    n = draw(st.integers(min_order, 3))
    lambdas = [x for x in LAMBDAS if LEMMA_TABLE.order(x) <= n]
    s = empty_stack(n)
    for _ in range(draw(st.integers(0, 16))):
        move = draw(st.sampled_from(("lambda", "lambda", "plain", "push", "pop", "collapse")))
        try:
            if move == "lambda":
                x = draw(st.sampled_from(lambdas))
                j = n - LEMMA_TABLE.order(x) + 1
                s = push1(s, StackSymbol(x, Link(j, 1) if _fits(s, j) else None))
            elif move == "plain":
                j = draw(st.integers(0, n))
                link = Link(j, 1) if j and _fits(s, j) else None
                s = push1(s, StackSymbol(draw(st.sampled_from(PLAIN)), link))
            elif move == "push" and n >= 2:
                s = push_j(s, draw(st.integers(2, n)))
            elif move == "pop":
                s = pop(s, draw(st.integers(1, n)))
            elif move == "collapse":
                s = collapse(s)
        except InvalidStackOperation:
            continue
    return n, s


def dec(s, l: int) -> list[DecEntry]:
    return order_decomposition(s, l, LEMMA_TABLE)


def order_of(e: DecEntry) -> int:
    return LEMMA_TABLE.order(e.symbol.node)


def safe(s, l: int, n: int) -> bool:
    return bool(is_l_safe(s, l, LEMMA_TABLE, n))


def occurrences(s, path: tuple[int, ...] = ()) -> list[tuple[int, ...]]:
    if isinstance(s, Stack1):
        return [(*path, pos) for pos in range(len(s))]
    return [occ for i, t in enumerate(s.items) for occ in occurrences(t, (*path, i))]


# ----- order decomposition ----- #


@given(linked_stacks(), st.integers(0, 3))
def test_iterative_orddec_matches_recursive_on_linked_stacks(stack, l):
    _, s = stack
    assert dec(s, l) == order_decomposition_recursive(s, l, LEMMA_TABLE)


@given(linked_stacks(), st.sampled_from(LAMBDAS), st.integers(0, 3))
def test_pushing_a_lambda_cuts_the_decomposition(stack, x, l):
    _, s = stack
    sym = StackSymbol(x)
    o = LEMMA_TABLE.order(x)
    after = dec(push1(s, sym), l)
    if o > l:
        assert after == [*(e for e in dec(s, l) if order_of(e) > o), DecEntry(sym, len(top1(s)))]
    else:
        assert after == dec(s, l)


@given(linked_stacks(), st.sampled_from(PLAIN), st.integers(0, 3))
def test_pushing_a_plain_symbol_keeps_the_decomposition(stack, x, l):
    _, s = stack
    assert dec(push1(s, StackSymbol(x, Link(1, 1))), l) == dec(s, l)


@given(linked_stacks(), st.integers(0, 3))
def test_popping_a_plain_symbol_keeps_the_decomposition(stack, l):
    _, s = stack
    x = top1(s).symbol
    if x is not None and not LEMMA_TABLE.is_lambda(x.node):
        assert dec(pop(s, 1), l) == dec(s, l)


@given(linked_stacks(), st.integers(0, 3), st.integers(0, 3))
def test_higher_thresholds_keep_an_outer_prefix(stack, l, k):
    _, s = stack
    lo, hi = sorted((l, k))
    outer, full = dec(s, hi), dec(s, lo)
    assert full[: len(outer)] == outer
    assert outer == [e for e in full if order_of(e) > hi]


# ----- l-safety ----- #


@given(linked_stacks(), st.integers(0, 3), st.integers(0, 3))
def test_safety_is_upward_closed(stack, l, k):
    n, s = stack
    lo, hi = sorted((l, k))
    if safe(s, lo, n):
        assert safe(s, hi, n)


@given(linked_stacks(min_order=2), st.integers(0, 3))
def test_top_stack_of_a_safe_stack_is_safe(stack, l):
    n, s = stack
    if safe(s, l, n):
        assert safe(top(s, n), l, n)


@given(linked_stacks(), st.integers(0, 3))
def test_popping_a_plain_top_keeps_safety(stack, l):
    n, s = stack
    x = top1(s).symbol
    if x is not None and not LEMMA_TABLE.is_lambda(x.node) and safe(s, l, n):
        assert safe(pop(s, 1), l, n)


@given(
    linked_stacks(),
    st.sampled_from(PLAIN),
    st.integers(1, 3),
    st.integers(1, 3),
    st.integers(0, 3),
)
def test_pushing_a_plain_symbol_keeps_safety(stack, x, order, height, l):
    n, s = stack
    if safe(s, l, n):
        assert safe(push1(s, StackSymbol(x, Link(order, height))), l, n)


@given(linked_stacks(), st.sampled_from(LAMBDAS))
def test_pushing_a_lambda_with_a_pop1_link_keeps_zero_safety(stack, x):
    n, s = stack
    if safe(s, 0, n):
        assert safe(push1(s, StackSymbol(x, Link(1, 1))), 0, n)


@given(linked_stacks(), st.sampled_from(LAMBDAS), st.integers(0, 3))
def test_lambdas_at_or_below_the_threshold_keep_safety(stack, x, l):
    n, s = stack
    if LEMMA_TABLE.order(x) <= l and safe(s, l, n):
        assert safe(push1(s, StackSymbol(x, Link(2, 3))), l, n)


@given(linked_stacks(min_order=2), st.integers(0, 3))
def test_renumbering_the_top_stack_raises_its_safety_level(stack, q):
    n, s = stack
    t = top(s, n)
    if safe(t, q, n):
        for l in range(n):
            assert safe(renumber(t, n - l + 1), max(l, q), n)


@given(linked_stacks(min_order=2), st.integers(0, 3))
def test_safe_top_over_a_zero_safe_rest_is_safe(stack, l):
    n, s = stack
    if len(s.items) >= 2 and safe(pop(s, n), 0, n) and safe(top(s, n), l, n):
        assert safe(s, l, n)


@given(linked_stacks(min_order=2), st.integers(1, 2))
def test_push_j_of_a_zero_safe_stack(stack, l):
    n, s = stack
    if l < n and safe(s, 0, n):
        assert safe(push_j(s, n - l + 1), l, n)


@given(linked_stacks(), st.integers(1, 4), st.data())
def test_renumbering_commutes_with_prefixes(stack, j, data):
    _, s = stack
    occs = occurrences(s)
    if not occs:
        return
    occ = data.draw(st.sampled_from(occs))
    assert renumber(prefix_at(s, occ), j) == prefix_at(renumber(s, j), occ)
    assert renumber(strict_prefix_at(s, occ), j) == strict_prefix_at(renumber(s, j), occ)


@given(st.lists(linked_stacks(min_order=3), max_size=12), st.integers(0, 3))
def test_safety_memo_stays_bounded(stacks, l):
    checker = SafetyChecker(LEMMA_TABLE, 3, max_entries=4)
    for _, s in stacks:
        assert bool(checker.is_l_safe(s, l)) == safe(s, l, 3)
        assert checker.memo_size <= 4


def test_safety_memo_needs_room():
    with pytest.raises(ValueError, match="positive"):
        SafetyChecker(LEMMA_TABLE, 2, max_entries=0)


# ----- stacks reached by CPDA(G) ----- #


def reachable_stacks(m, steps: int) -> list:
    """Stacks of the first `steps` configurations of a breadth-first run over every branch."""
    out = []
    queue = deque([m.initial])
    while queue and len(out) < steps:
        c = queue.popleft()
        out.append(c.stack)
        outcome = step(m, c)
        if isinstance(outcome, Internal):
            queue.append(outcome.config)
        elif isinstance(outcome, Output):
            queue.extend(x for x in outcome.successors if isinstance(x, Configuration))
    return out


@pytest.fixture
def reached(scheme):
    def _reach(name: str):
        g = scheme(name)
        graph = build_comp_graph(g)
        m = build_cpda(graph, g.order)
        return graph, m.order, reachable_stacks(m, REACHABLE_STEPS)

    return _reach


REACHABLE_SCHEMES = ["twice_compose", "nonhomog", "order3_hg", "order3_loop"]


@pytest.mark.parametrize("name", REACHABLE_SCHEMES)
def test_reachable_stacks_and_their_tops_are_safe(reached, name):
    graph, n, stacks = reached(name)
    checker = SafetyChecker(graph, n)
    assert len(stacks) > 10
    for s in stacks:
        assert checker.is_l_safe(s, 0)
        assert checker.is_l_safe(top(s, n), 0)


@pytest.mark.parametrize("name", REACHABLE_SCHEMES)
def test_push_j_and_renumbering_on_reachable_stacks(reached, name):
    graph, n, stacks = reached(name)
    checker = SafetyChecker(graph, n)
    for s in stacks:
        for l in range(1, n):
            assert checker.is_l_safe(push_j(s, n - l + 1), l)
        for l in range(n):
            assert checker.is_l_safe(renumber(top(s, n), n - l + 1), l)


@pytest.mark.parametrize("name", REACHABLE_SCHEMES)
def test_orddec_versions_agree_on_reachable_stacks(reached, name):
    graph, n, stacks = reached(name)
    for s in stacks:
        for l in range(n + 1):
            assert order_decomposition(s, l, graph) == order_decomposition_recursive(s, l, graph)
