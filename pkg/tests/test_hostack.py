# tests/test_hostack.py
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hpl.errors import (
    AbsentLink,
    DanglingLink,
    EmptyPop,
    EmptyTop,
    InvalidStackOperation,
    OccurrenceNotFound,
    StackParseError,
)
from hpl.hostack import (
    LetterTable,
    Link,
    StackSymbol,
    collapse,
    empty_stack,
    erase_links,
    is_l_safe,
    is_safe,
    link_erased_equal,
    make_stack,
    order_decomposition,
    order_decomposition_recursive,
    parse_stack,
    pop,
    prefix_at,
    push1,
    push_j,
    render_stack,
    strict_prefix_at,
    top,
    top1,
    top_symbol,
)

LETTERS = "abcdef"
letters = st.sampled_from(LETTERS).map(StackSymbol)


def stacks(order: int) -> st.SearchStrategy:
    if order == 1:
        return st.lists(letters, max_size=6)
    return st.lists(stacks(order - 1), min_size=1, max_size=3)


@st.composite
def ho_stacks(draw):
    order = draw(st.integers(1, 3))
    return make_stack(order, draw(stacks(order)))


TABLE = LetterTable(lambdas={"a": 1, "b": 2, "c": 3, "d": 0}, primes={"a"})


def test_empty_stacks():
    assert render_stack(empty_stack(1)) == "[]"
    assert render_stack(empty_stack(3)) == "[[[]]]"
    with pytest.raises(ValueError, match="at least 1"):
        empty_stack(0)


def test_parse_and_render():
    s = parse_stack("[[a^(2,1) b][c]]")
    assert s.order == 2
    assert render_stack(s) == "[[a^(2,1) b][c]]"
    assert top_symbol(s) == StackSymbol("c")
    with pytest.raises(StackParseError):
        parse_stack("[[a][b]")
    with pytest.raises(StackParseError):
        parse_stack("[[a] b]")


def test_pop_and_top_errors():
    s = empty_stack(2)
    with pytest.raises(EmptyPop):
        pop(s, 1)
    with pytest.raises(EmptyPop):
        pop(s, 2)
    with pytest.raises(EmptyTop):
        top(s, 1)
    with pytest.raises(ValueError):
        pop(s, 3)


def test_push_j_renumbers_links_in_the_copy():
    s = parse_stack("[[a][a b^(2,1)]]")
    s = push_j(s, 2)
    assert render_stack(s) == "[[a][a b^(2,1)][a b^(2,2)]]"
    assert render_stack(collapse(s)) == "[[a]]"


def test_collapse_order1_link():
    s = parse_stack("[[a b c^(1,2)]]")
    assert render_stack(collapse(s)) == "[[a]]"
    with pytest.raises(AbsentLink):
        collapse(parse_stack("[[a]]"))


def test_prefix_at():
    s = parse_stack("[[a b][c d]]")
    assert render_stack(prefix_at(s, (1, 0))) == "[[a b][c]]"
    assert render_stack(prefix_at(s, (0, 0))) == "[[a]]"
    assert render_stack(prefix_at(s, (1, 1), strict=True)) == "[[a b][c]]"


def test_collapse_past_the_bottom_is_a_dangling_link():
    with pytest.raises(DanglingLink, match="reaches below"):
        collapse(parse_stack("[[a b^(1,3)]]"))
    with pytest.raises(DanglingLink, match="reaches below"):
        collapse(parse_stack("[[a][b^(2,2)]]"))
    with pytest.raises(DanglingLink, match="order-1 stack"):
        collapse(parse_stack("[a b^(2,1)]"))
    assert issubclass(DanglingLink, InvalidStackOperation)


def test_dangling_collapse_makes_a_stack_unsafe():
    result = is_safe(parse_stack("[[d b^(2,1)]]"), TABLE)
    assert not result
    assert "fails" in result.witness[0]
    assert "reaches below" in result.witness[0]


def test_strict_prefix_drops_the_addressed_symbol():
    s = parse_stack("[[a b][c d]]")
    assert render_stack(strict_prefix_at(s, (1, 1))) == "[[a b][c]]"
    assert render_stack(strict_prefix_at(s, (0, 0))) == "[[]]"
    with pytest.raises(OccurrenceNotFound):
        strict_prefix_at(s, (2, 0))
    with pytest.raises(OccurrenceNotFound):
        strict_prefix_at(s, (1, 2))


@given(ho_stacks(), letters)
def test_pop_undoes_push1(s, x):
    assert pop(push1(s, x), 1) == s
    assert top(push1(s, x), 1) == x


@given(ho_stacks())
def test_pop_undoes_push_j(s):
    for j in range(2, s.order + 1):
        assert pop(push_j(s, j), j) == s


@given(ho_stacks())
def test_parse_reads_what_render_writes(s):
    assert parse_stack(render_stack(s)) == s


@given(ho_stacks(), st.integers(0, 3))
def test_iterative_orddec_matches_recursive(s, l):
    assert order_decomposition(s, l, TABLE) == order_decomposition_recursive(s, l, TABLE)


@given(ho_stacks(), st.integers(0, 3))
def test_orddec_orders_increase(s, l):
    orders = [TABLE.order(e.symbol.node) for e in order_decomposition(s, l, TABLE)]
    assert orders == sorted(orders, reverse=True)
    assert all(o > l for o in orders)
    assert len(set(orders)) == len(orders)


@given(ho_stacks())
def test_link_free_stacks_are_safe(s):
    assert is_safe(s, TABLE)


@given(ho_stacks())
def test_erasing_links(s):
    assert erase_links(s) == s
    assert link_erased_equal(s, s)


def test_orddec_example():
    s = parse_stack("[[c d b a d]]")
    dec = order_decomposition(s, 0, TABLE)
    assert [e.symbol.node for e in dec] == ["c", "b", "a"]
    assert [e.position for e in dec] == [0, 2, 3]
    assert [e.symbol.node for e in order_decomposition(s, 1, TABLE)] == ["c", "b"]


def test_safety_rejects_tall_links():
    s = make_stack(2, [[StackSymbol("b", Link(1, 2))]])
    result = is_safe(s, TABLE)
    assert not result
    assert "height 2" in result.witness[0]


def test_safety_follows_collapses():
    good = parse_stack("[[d b^(1,1)]]")
    assert is_l_safe(good, 0, TABLE)
    # b hides a^(1,2) until it is collapsed
    bad = make_stack(2, [[StackSymbol("a", Link(1, 2)), StackSymbol("d"), StackSymbol("b", Link(1, 1))]])
    assert [e.symbol.node for e in order_decomposition(bad, 0, TABLE)] == ["b"]
    result = is_l_safe(bad, 0, TABLE)
    assert not result
    assert len(result.witness) == 2
    assert result.witness[0].startswith("collapse at b")


def test_top1():
    s = parse_stack("[[a][b c]]")
    assert [x.node for x in top1(s).symbols()] == ["b", "c"]
