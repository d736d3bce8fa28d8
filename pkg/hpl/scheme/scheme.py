# hpl/scheme/scheme.py
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from ..core.terms import Lam, Sym, SymbolKind, Term, check_term, symbols_of
from ..core.types import O, RankedSymbol, SimpleType, canonical_args, format_type, type_order
from ..errors import SchemeValidationError, TypeMismatch, UnknownNonTerminal, UnknownSymbol


@dataclass(frozen=True)
class Rule:
    """
    F z1 ... zm = body

    - head: non-terminal name
    - params: (name, type) pairs, in order
    - body: applicative term of type o
    """

    head: str
    params: tuple[tuple[str, SimpleType], ...]
    body: Term

    @property
    def param_names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.params)


@dataclass(frozen=True, eq=False)
class RecursionScheme:
    terminals: dict[str, RankedSymbol]
    nonterminals: dict[str, SimpleType]
    rules: dict[str, Rule]
    start: str = "S"
    _env: dict[str, SimpleType] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        env: dict[str, SimpleType] = {name: t.type for name, t in self.terminals.items()}
        env.update(self.nonterminals)
        self._env.update(env)

    @property
    def order(self) -> int:
        return max((type_order(t) for t in self.nonterminals.values()), default=0)

    @property
    def env(self) -> dict[str, SimpleType]:
        """Types of every terminal and non-terminal."""
        return self._env

    def rule_env(self, head: str) -> dict[str, SimpleType]:
        env = dict(self._env)
        env.update(self.rules[head].params)
        return env

    def rank(self, terminal: str) -> int:
        return self.terminals[terminal].rank


def build_scheme(
    terminals: dict[str, RankedSymbol],
    nonterminals: dict[str, SimpleType],
    rules: dict[str, Rule],
    start: str = "S",
) -> RecursionScheme:
    g = RecursionScheme(terminals=terminals, nonterminals=nonterminals, rules=rules, start=start)
    validate_scheme(g)
    return g


def validate_scheme(g: RecursionScheme) -> None:
    """Raise SchemeValidationError unless every Rule/RecursionScheme invariant holds."""
    clash = set(g.terminals) & set(g.nonterminals)
    if clash:
        raise SchemeValidationError(f"names declared both terminal and non-terminal: {sorted(clash)}")
    if g.start not in g.nonterminals:
        raise SchemeValidationError(f"start symbol {g.start!r} is not a non-terminal")
    if g.nonterminals[g.start] != O:
        raise SchemeValidationError(
            f"start symbol {g.start} must have type o, got {format_type(g.nonterminals[g.start])}"
        )
    for name in g.nonterminals:
        if name not in g.rules:
            raise SchemeValidationError(f"missing rule for non-terminal {name}")
    for head, rule in g.rules.items():
        if head not in g.nonterminals:
            raise SchemeValidationError(f"rule for undeclared non-terminal {head}")
        _validate_rule(g, rule)


def _validate_rule(g: RecursionScheme, rule: Rule) -> None:
    expected = canonical_args(g.nonterminals[rule.head])
    if len(rule.params) != len(expected):
        raise SchemeValidationError(
            f"rule {rule.head} has {len(rule.params)} parameters, its type needs {len(expected)}"
        )
    if len(set(rule.param_names)) != len(rule.params):
        raise SchemeValidationError(f"rule {rule.head} repeats a parameter name")
    for (name, t), want in zip(rule.params, expected, strict=True):
        if t != want:
            raise SchemeValidationError(
                f"parameter {name} of {rule.head} has type {format_type(t)}, expected {format_type(want)}"
            )
    if isinstance(rule.body, Lam):
        raise SchemeValidationError(f"rule {rule.head}: body must be applicative")
    for sym in symbols_of(rule.body):
        _check_kind(g, rule, sym)
    try:
        body_t = check_term(rule.body, g.rule_env(rule.head))
    except (UnknownSymbol, TypeMismatch) as e:
        raise SchemeValidationError(f"rule {rule.head}: {e}") from e
    if body_t != O:
        raise SchemeValidationError(
            f"rule {rule.head}: body has type {format_type(body_t)}, expected o"
        )


def _check_kind(g: RecursionScheme, rule: Rule, sym: Sym) -> None:
    known = {
        SymbolKind.PARAM: sym.name in rule.param_names,
        SymbolKind.NONTERMINAL: sym.name in g.nonterminals,
        SymbolKind.TERMINAL: sym.name in g.terminals,
    }
    if not known[sym.kind]:
        raise SchemeValidationError(f"rule {rule.head}: unknown {sym.kind} {sym.name!r}")


def lambda_of(g: RecursionScheme, name: str) -> Lam:
    """Λ(F) = λz1...zm. body, with terminals and non-terminals left free."""
    try:
        rule = g.rules[name]
    except KeyError:
        raise UnknownNonTerminal(name) from None
    return Lam(rule.params, rule.body)


def dependencies(g: RecursionScheme) -> dict[str, list[str]]:
    deps: dict[str, list[str]] = {}
    for head, rule in g.rules.items():
        seen: list[str] = []
        for sym in symbols_of(rule.body):
            if sym.kind is SymbolKind.NONTERMINAL and sym.name not in seen:
                seen.append(sym.name)
        deps[head] = seen
    return deps


def reachable_nonterminals(g: RecursionScheme) -> set[str]:
    deps = dependencies(g)
    seen = {g.start}
    queue = deque([g.start])
    while queue:
        for nxt in deps.get(queue.popleft(), []):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def dead_rules(g: RecursionScheme) -> set[str]:
    """Non-terminals unreachable from the start symbol in the dependency graph."""
    return set(g.nonterminals) - reachable_nonterminals(g)
