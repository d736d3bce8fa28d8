# tests/test_types.py
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hpl.core.terms import App, Sym, SymbolKind, check_term, format_term, operand_subterms, spine
from hpl.core.types import (
    O,
    RankedSymbol,
    arrow,
    arrows,
    format_type,
    is_homogeneous,
    parse_type,
    type_order,
)
from hpl.errors import SchemeSyntaxError, TypeMismatch, UnknownSymbol

types = st.recursive(st.just(O), lambda inner: st.builds(arrow, inner, inner), max_leaves=8)


@pytest.mark.parametrize(
    ("text", "order", "arity"),
    [
        ("o", 0, 0),
        ("o -> o", 1, 1),
        ("o -> o -> o", 1, 2),
        ("(o -> o) -> o", 2, 1),
        ("((o -> o) -> o) -> o", 3, 1),
        ("(o -> o) -> o -> o", 2, 2),
    ],
)
def test_order_and_arity(text, order, arity):
    t = parse_type(text)
    assert t.order == order
    assert t.arity == arity


def test_arrow_is_right_associative():
    assert parse_type("o -> o -> o") == arrow(O, arrow(O, O))
    assert parse_type("o → o") == parse_type("o -> o")


def test_tuple_notation():
    assert parse_type("((o,o),o)") == parse_type("(o -> o) -> o")


def test_bad_type_reports_column():
    with pytest.raises(SchemeSyntaxError) as exc:
        parse_type("o -> x", line=4, column=10)
    assert exc.value.line == 4


@pytest.mark.parametrize(
    ("text", "expected"),
    [
        ("(o -> o) -> o -> o", True),
        ("o -> (o -> o) -> o", False),
        ("((o -> o) -> o) -> (o -> o) -> o", True),
        ("(o -> o -> o) -> o", True),
        ("(o -> (o -> o) -> o) -> o", False),
    ],
)
def test_homogeneity(text, expected):
    assert is_homogeneous(parse_type(text)) is expected


@given(types)
def test_format_then_parse_gives_same_type(t):
    assert parse_type(format_type(t)) == t


@given(types, types)
def test_arrow_order(a, b):
    assert type_order(arrow(a, b)) == max(type_order(a) + 1, type_order(b))


def test_ranked_symbol_type():
    g = RankedSymbol(name="g", rank=2)
    assert g.type == arrows([O, O])
    with pytest.raises(ValueError, match="non-negative"):
        RankedSymbol(name="g", rank=-1)


# ----- terms ----- #

ENV = {"g": arrows([O, O]), "h": arrow(O, O), "a": O, "F": parse_type("(o -> o) -> o")}


def test_check_term():
    t = App(App(Sym("g", SymbolKind.TERMINAL), Sym("a")), App(Sym("h"), Sym("a")))
    assert check_term(t, ENV) == O
    assert check_term(App(Sym("F"), Sym("h")), ENV) == O


def test_check_term_errors():
    with pytest.raises(UnknownSymbol):
        check_term(Sym("zz"), ENV)
    with pytest.raises(TypeMismatch):
        check_term(App(Sym("F"), Sym("a")), ENV)
    with pytest.raises(TypeMismatch):
        check_term(App(Sym("a"), Sym("a")), ENV)


def test_spine_and_format():
    t = App(App(Sym("g"), App(Sym("h"), Sym("a"))), Sym("a"))
    head, args = spine(t)
    assert head == Sym("g")
    assert len(args) == 2
    assert format_term(t) == "g (h a) a"


def test_operand_subterms_outermost_first():
    t = App(App(Sym("g"), App(Sym("h"), Sym("a"))), Sym("a"))
    assert [format_term(s) for s in operand_subterms(t)] == ["a", "h a", "a"]
