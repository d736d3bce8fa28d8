# tests/test_pda.py
import pytest

from hpl.comptree import build_comp_graph, is_incrementally_bound
from hpl.cpda import PopJ, build_cpda, generate_tree
from hpl.cpda.machine import Emit, SimulatedCollapse
from hpl.errors import NonFunctionDelta, NotIncrementallyBound, PdaSyntaxError
from hpl.pda import (
    derive_pda,
    format_pda,
    is_normalized,
    kappa,
    lockstep_check,
    normalize_pda,
    parse_pda,
    pda_to_hors,
    roundtrip_safe_scheme,
    run_pda,
)
from hpl.scheme import homogeneity, is_safe_knu, rewrite_tree

from .conftest import IB_SCHEMES, LOCKSTEP_STEPS, PDA_FIXTURES, TREE_BUDGET, TREE_DEPTH


def machines(g, uniform=False, check=True):
    graph = build_comp_graph(g)
    cpda = build_cpda(graph, g.order, convention="hmos" if uniform else "prime-link")
    return cpda, derive_pda(cpda, graph, uniform=uniform, check=check)


# ----- PDA(G) ----- #


def test_derived_pda_simulates_collapses(scheme):
    _, pda = machines(scheme("twice_compose"))
    assert pda.name == "PDA(S)"
    assert any(
        isinstance(op, SimulatedCollapse)
        for a in pda.transitions.values()
        if not isinstance(a, Emit)
        for op in a.ops
    )


def test_non_prime_binders_pop_a_whole_level(scheme):
    _, pda = machines(scheme("twice_compose"))
    normal = normalize_pda(pda)
    pops = {a.ops[0] for a in normal.transitions.values() if not isinstance(a, Emit) and isinstance(a.ops[0], PopJ)}
    assert PopJ(2) in pops
    assert PopJ(1) in pops


def test_unbound_scheme_is_refused(scheme):
    g = scheme("example2")
    with pytest.raises(NotIncrementallyBound) as exc:
        machines(g)
    assert len(exc.value.violations) == 1


@pytest.mark.parametrize("name", IB_SCHEMES)
@pytest.mark.parametrize("uniform", [False, True])
def test_pda_tree_matches_rewriting(scheme, name, uniform):
    g = scheme(name)
    _, pda = machines(g, uniform=uniform)
    assert generate_tree(pda, TREE_DEPTH, TREE_BUDGET) == rewrite_tree(g, TREE_DEPTH, TREE_BUDGET)


def test_unchecked_example2_still_generates_its_tree(scheme):
    g = scheme("example2")
    _, pda = machines(g, check=False)
    assert generate_tree(pda, 7, 10_000) == rewrite_tree(g, 7, 10_000)


# ----- lockstep ----- #


@pytest.mark.parametrize("name", IB_SCHEMES)
@pytest.mark.parametrize("uniform", [False, True])
def test_lockstep_agrees(scheme, name, uniform):
    cpda, pda = machines(scheme(name), uniform=uniform)
    report = lockstep_check(cpda, pda, LOCKSTEP_STEPS)
    assert report.ok, report.mismatches[:3]
    assert report.steps > 0


def test_lockstep_counts_collapses(scheme):
    cpda, pda = machines(scheme("twice_compose"))
    report = lockstep_check(cpda, pda, LOCKSTEP_STEPS)
    assert report.collapses > 0


def test_lockstep_spots_a_wrong_pda(scheme):
    cpda, _ = machines(scheme("order1_chain"))
    _, other = machines(scheme("swap_args"))
    report = lockstep_check(cpda, other, 50)
    assert not report.ok


# ----- normalization and PDA files ----- #


@pytest.mark.parametrize("name", PDA_FIXTURES)
def test_fixture_pdas_are_normalized(pda, name):
    assert is_normalized(pda(name))


def test_normalize_derived_pda(scheme):
    g = scheme("order3_hg")
    _, raw = machines(g)
    assert not is_normalized(raw)
    normal = normalize_pda(raw)
    assert is_normalized(normal)
    assert normal.initial_state != raw.initial_state
    assert generate_tree(normal, 6, 10_000) == generate_tree(raw, 6, 10_000)


@pytest.mark.parametrize(
    ("name", "depth", "expected"),
    [
        ("fchain", 3, "(f (f (f (CUT))))"),
        ("push_pop", 4, "(g (b) (c))"),
        ("push2_pop2", 4, "(g (b) (c))"),
        ("counter", 3, "(g (g (g (CUT) (CUT)) (h (CUT))) (e))"),
        ("copy_count", 3, "(g (g (g (CUT) (CUT)) (h (CUT))) (m (e)))"),
        ("stuck", 3, "(g (DIVERGENT) (a))"),
    ],
)
def test_fixture_pda_trees(pda, name, depth, expected):
    assert generate_tree(pda(name), depth, 1000).to_sexpr() == expected


def test_copy_count_right_spine(pda):
    tree = generate_tree(pda("copy_count"), 8, 1000)
    assert tree.children[0].children[1].to_sexpr() == "(h (m (k (e))))"


def test_formatted_pda_parses_back(scheme):
    _, raw = machines(scheme("twice_compose"))
    text = format_pda(raw, header="twice_compose")
    assert text.startswith("# twice_compose\n%order 2\n")
    again = parse_pda(text)
    assert generate_tree(again, 6, 10_000) == generate_tree(raw, 6, 10_000)


def test_run_pda_emits_then_stops():
    m = parse_pda("%order 1\n%states q0 q1\n%alphabet f:1 a:0\nq0 ⊥ -> output f q1\nq1 ⊥ -> output a\n")
    assert run_pda(m, 5, 10).to_sexpr() == "(f (a))"


def test_run_pda_pop_on_bottom_diverges():
    m = parse_pda("%order 1\n%states q0\n%alphabet a:0\nq0 ⊥ -> popj 1 q0\n")
    assert run_pda(m, 3, 10).to_sexpr() == "(DIVERGENT)"


def test_run_pda_rejects_collapsible_machines(scheme):
    g = scheme("twice_compose")
    cpda = build_cpda(build_comp_graph(g), g.order)
    with pytest.raises(TypeError, match="PdaMachine"):
        run_pda(cpda, 3, 100)


def test_bottom_can_be_written_as_bot():
    m = parse_pda("%order 1\n%states q\n%alphabet a:0\nq bot -> output a\n")
    assert generate_tree(m, 2, 10).to_sexpr() == "(a)"


@pytest.mark.parametrize(
    ("text", "error", "message"),
    [
        ("%states q\nq ⊥ -> output a", PdaSyntaxError, "must follow"),
        ("%order 1\n%states q\n%alphabet a:0\nq ⊥ -> output a\nq ⊥ -> output a", NonFunctionDelta, "second"),
        ("%order 1\n%states q\nq ⊥ -> push1 z q", PdaSyntaxError, "undeclared stack symbol"),
        ("%order 1\n%states q\n%stack z\nq ⊥ -> push1 z r", PdaSyntaxError, "undeclared state"),
        ("%order 1\n%states q\n%stack z\nq z -> pushj 2 q", PdaSyntaxError, "outside"),
        ("%order 2\n%states q\n%alphabet g:2\nq ⊥ -> output g q", PdaSyntaxError, "successor"),
        ("%order 0\n%states q", PdaSyntaxError, "positive"),
        ("%order 1\n%states q\nq ⊥ -> jump q", PdaSyntaxError, "cannot read"),
    ],
)
def test_pda_file_errors(text, error, message):
    with pytest.raises(error, match=message):
        parse_pda(text)


# ----- back-translation ----- #


def test_kappa():
    assert str(kappa(0, 3)) == "o"
    assert str(kappa(1, 1)) == "o -> o"
    assert str(kappa(1, 2)) == "o -> o -> o"
    assert str(kappa(2, 1)) == "(o -> o) -> o -> o"


@pytest.mark.parametrize("name", PDA_FIXTURES)
def test_back_translation_generates_the_same_tree(pda, name):
    m = pda(name)
    g = pda_to_hors(m)
    assert g.order == m.order
    assert rewrite_tree(g, 8, 100_000) == generate_tree(m, 8, 100_000)


@pytest.mark.parametrize("name", PDA_FIXTURES)
def test_back_translation_is_safe(pda, name):
    g = pda_to_hors(pda(name))
    assert all(homogeneity(g).values())
    assert is_safe_knu(g)
    assert is_incrementally_bound(g)


@pytest.mark.parametrize("name", ["counter", "push2_pop2", "copy_count"])
def test_back_translation_over_every_state(pda, name):
    m = pda(name)
    width = len(normalize_pda(m).states)
    g = pda_to_hors(m, every_state=True)
    assert kappa(m.order, width) in g.nonterminals.values()
    assert rewrite_tree(g, 6, 100_000) == generate_tree(m, 6, 100_000)


def test_names_avoid_terminals():
    m = parse_pda("%order 1\n%states q\n%alphabet S:0 Omega0:0\nq ⊥ -> output S\n")
    g = pda_to_hors(m)
    assert g.start == "S'"
    assert "Omega0'" in g.rules
    assert rewrite_tree(g, 2, 10).to_sexpr() == "(S)"


# ----- round trip ----- #


@pytest.mark.parametrize("name", ["nonhomog", "trivial", "order1_chain", "twice_compose", "swap_args"])
@pytest.mark.parametrize("uniform", [False, True])
def test_round_trip(scheme, name, uniform):
    g = scheme(name)
    out = roundtrip_safe_scheme(g, uniform=uniform)
    assert is_safe_knu(out)
    assert rewrite_tree(out, 6, 100_000) == rewrite_tree(g, 6, 100_000)


def test_round_trip_refuses_unbound_schemes(scheme):
    with pytest.raises(NotIncrementallyBound):
        roundtrip_safe_scheme(scheme("example2"))
