# hpl/pda/backtranslate.py
from __future__ import annotations

import logging
from collections import deque
from collections.abc import Hashable
from functools import cache

from ..core.terms import Sym, SymbolKind, Term, apply
from ..core.types import O, RankedSymbol, SimpleType, arrows, canonical_args
from ..cpda.machine import Action, Emit, Ops, PdaMachine, PopJ, Push1, PushJ
from ..errors import NonFunctionDelta
from ..scheme.scheme import RecursionScheme, Rule, build_scheme
from .normalize import normalize_pda

logger = logging.getLogger(__name__)

BOTTOM = None


@cache
def kappa(j: int, m: int) -> SimpleType:
    """κ_0 = o, κ_j = κ_{j-1}^m → … → κ_0^m → o."""
    if j == 0:
        return O
    args: list[SimpleType] = []
    for level in range(j - 1, -1, -1):
        args.extend([kappa(level, m)] * m)
    return arrows(args)


class _Translator:
    """
    Builds the rules of pda_to_hors.

    The continuation tuples have width m = |returns|, the states some pop
    moves to, rather than |Q|: a continuation for a state no pop reaches is
    never applied. `every_state` widens the tuples to all of Q.
    """

    def __init__(self, pda: PdaMachine, every_state: bool = False) -> None:
        self.pda = pda
        self.n = pda.order
        self.tops: list[Hashable] = [BOTTOM, *pda.alphabet]
        self.top_index = {a: i for i, a in enumerate(self.tops)}
        self.state_index = {q: i for i, q in enumerate(pda.states)}
        targets = {
            a.target
            for a in pda.transitions.values()
            if isinstance(a, Ops) and isinstance(a.ops[0], PopJ)
        }
        if every_state:
            self.returns = list(pda.states)
        else:
            self.returns = [q for q in pda.states if q in targets] or [pda.initial_state]
        self.m = len(self.returns)
        self.reserved = set(pda.terminals)
        self.uniform_pops = self._uniform_pops()
        self.nonterminals: dict[str, SimpleType] = {}
        self.rules: dict[str, Rule] = {}

    def _uniform_pops(self) -> dict[str, Ops]:
        """States whose transition is the same pop whatever the top symbol."""
        out: dict[str, Ops] = {}
        for q in self.pda.states:
            actions = {self.pda.transitions.get((q, a)) for a in self.tops}
            if len(actions) == 1:
                (only,) = actions
                if isinstance(only, Ops) and isinstance(only.ops[0], PopJ):
                    out[q] = only
        return out

    def _name(self, base: str) -> str:
        while base in self.reserved:
            base += "'"
        return base

    def f_name(self, q: str, a: Hashable) -> str:
        if q in self.uniform_pops:
            return self._name(f"F{self.state_index[q]}")
        return self._name(f"F{self.state_index[q]}_{self.top_index[a]}")

    def omega_name(self, j: int) -> str:
        return self._name(f"Omega{j}")

    def param(self, j: int, r: int) -> str:
        return self._name(f"x{j}_{r}")

    def params(self) -> tuple[tuple[str, SimpleType], ...]:
        out: list[tuple[str, SimpleType]] = []
        for j in range(self.n - 1, -1, -1):
            out.extend((self.param(j, r), kappa(j, self.m)) for r in range(self.m))
        return tuple(out)

    def psi(self, *levels: int) -> list[Term]:
        return [Sym(self.param(j, r)) for j in levels for r in range(self.m)]

    def f(self, q: str, a: Hashable) -> Sym:
        return Sym(self.f_name(q, a), SymbolKind.NONTERMINAL)

    def body(self, q: str, a: Hashable, action: Action | None, todo: deque) -> Term:
        n = self.n

        def frame(state: str, symbol: Hashable) -> Sym:
            todo.append((state, symbol))
            return self.f(state, symbol)

        if action is None:
            return Sym(self.omega_name(0), SymbolKind.NONTERMINAL)
        if isinstance(action, Emit):
            return apply(
                Sym(action.terminal, SymbolKind.TERMINAL),
                [apply(frame(b.target, a), self.psi(*range(n - 1, -1, -1))) for b in action.branches],
            )
        op = action.ops[0]
        match op:
            case Push1(node=b):
                j, new_top = 1, b
            case PushJ(j=jj):
                j, new_top = jj, a
            case PopJ(j=k):
                if action.target not in self.returns:  # pragma: no cover
                    raise NonFunctionDelta(f"pop target {action.target} has no continuation")
                head = Sym(self.param(n - k, self.returns.index(action.target)))
                return apply(head, self.psi(*range(n - k - 1, -1, -1)))
            case _:
                raise NonFunctionDelta(f"({q}, {a}): {op} is not a static PDA instruction")
        saved = [
            apply(frame(i, a), self.psi(*range(n - 1, n - j - 1, -1))) for i in self.returns
        ]
        args = [
            *self.psi(*range(n - 1, n - j, -1)),
            *saved,
            *self.psi(*range(n - j - 1, -1, -1)),
        ]
        return apply(frame(action.target, new_top), args)

    def translate(self) -> RecursionScheme:
        n, m = self.n, self.m
        kn = kappa(n, m)
        todo: deque[tuple[str, Hashable]] = deque([(self.pda.initial_state, BOTTOM)])
        while todo:
            q, a = todo.popleft()
            name = self.f_name(q, a)
            if name in self.rules:
                continue
            action = self.uniform_pops.get(q) or self.pda.transitions.get((q, a))
            self.nonterminals[name] = kn
            self.rules[name] = Rule(name, self.params(), self.body(q, a, action, todo))

        omega0 = self.omega_name(0)
        self.nonterminals[omega0] = O
        self.rules[omega0] = Rule(omega0, (), Sym(omega0, SymbolKind.NONTERMINAL))
        for j in range(1, n):
            name = self.omega_name(j)
            args = [(self._name(f"y{k}"), t) for k, t in enumerate(canonical_args(kappa(j, m)))]
            self.nonterminals[name] = kappa(j, m)
            self.rules[name] = Rule(name, tuple(args), Sym(omega0, SymbolKind.NONTERMINAL))

        start = self._name("S")
        initial: list[Term] = [
            Sym(self.omega_name(j), SymbolKind.NONTERMINAL)
            for j in range(n - 1, -1, -1)
            for _ in range(m)
        ]
        start_rule = Rule(start, (), apply(self.f(self.pda.initial_state, BOTTOM), initial))
        self.nonterminals = {start: O, **self.nonterminals}
        self.rules = {start: start_rule, **self.rules}
        terminals = {f: RankedSymbol(name=f, rank=r) for f, r in self.pda.terminals.items()}
        return build_scheme(terminals, self.nonterminals, self.rules, start=start)


def pda_to_hors(pda: PdaMachine, every_state: bool = False) -> RecursionScheme:
    """
    An order-n safe scheme generating the tree accepted by `pda`.

    One non-terminal F_p^a of type κ_n per reachable (state, top symbol);
    its parameters hold, per stack level, one continuation for every state a
    pop can return to, or for every state when `every_state` is set.
    """
    normal = normalize_pda(pda)
    g = _Translator(normal, every_state).translate()
    logger.info(
        "[pda_to_hors] order %d, %d states -> %d rules", normal.order, len(normal.states), len(g.rules)
    )
    return g
