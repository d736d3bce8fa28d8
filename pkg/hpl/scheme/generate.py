# hpl/scheme/generate.py
from __future__ import annotations

import logging
import random

from ..core.terms import Sym, SymbolKind, Term, apply
from ..core.types import O, RankedSymbol, SimpleType, canonical_args, ground_type, parse_type
from ..errors import SchemeValidationError
from .scheme import RecursionScheme, Rule, build_scheme, dead_rules

logger = logging.getLogger(__name__)

TERMINALS = {"a": 0, "h": 1, "g": 2}

TYPE_POOL = tuple(
    parse_type(t)
    for t in (
        "o -> o",
        "o -> o -> o",
        "(o -> o) -> o",
        "(o -> o) -> o -> o",
        "o -> (o -> o) -> o",
        "((o -> o) -> o) -> o",
        "(o -> o) -> (o -> o) -> o",
        "o -> o -> (o -> o) -> o",
    )
)

MAX_NONTERMINAL_USES = 2
MAX_ATTEMPTS = 1000


class _GiveUp(Exception):
    pass


class _BodyBuilder:
    def __init__(self, rng: random.Random, env: dict[str, tuple[SimpleType, SymbolKind]], depth: int) -> None:
        self.rng = rng
        self.env = env
        self.depth = depth
        self.nt_uses = 0

    def term(self, t: SimpleType, depth: int) -> Term:
        options: list[tuple[str, int]] = []
        for name, (ty, kind) in self.env.items():
            if kind is SymbolKind.NONTERMINAL and self.nt_uses >= MAX_NONTERMINAL_USES:
                continue
            needed = _args_needed(ty, t)
            if needed is None or (depth <= 0 and needed > 0):
                continue
            options.append((name, needed))
        if not options:
            raise _GiveUp
        name, needed = self.rng.choice(options)
        ty, kind = self.env[name]
        if kind is SymbolKind.NONTERMINAL:
            self.nt_uses += 1
        args = [self.term(a, depth - 1) for a in canonical_args(ty)[:needed]]
        return apply(Sym(name, kind), args)


def _args_needed(head: SimpleType, want: SimpleType) -> int | None:
    """How many arguments turn `head` into `want`, or None."""
    n = 0
    while True:
        if head == want:
            return n
        if head.is_ground:
            return None
        head = head.result
        n += 1


def generate_scheme(seed: int, max_depth: int = 3) -> RecursionScheme:
    """
    A small random well-typed scheme over a:0, h:1, g:2 with no dead rules.

    Two to four non-terminals, types drawn from a pool that includes
    non-homogeneous ones, at most two non-terminal occurrences per body.
    The same seed always gives the same scheme.
    """
    rng = random.Random(seed)
    terminals = {name: RankedSymbol(name=name, rank=r) for name, r in TERMINALS.items()}
    for _ in range(MAX_ATTEMPTS):
        count = rng.randint(2, 4)
        nonterminals: dict[str, SimpleType] = {"S": O}
        for i in range(1, count):
            nonterminals[f"N{i}"] = rng.choice(TYPE_POOL)
        try:
            rules = {head: _rule(rng, head, t, nonterminals, max_depth) for head, t in nonterminals.items()}
            g = build_scheme(terminals, nonterminals, rules)
        except (_GiveUp, SchemeValidationError):
            continue
        if dead_rules(g):
            continue
        logger.debug("[generate_scheme] seed %d: %d non-terminals", seed, len(nonterminals))
        return g
    raise RuntimeError(f"no scheme found for seed {seed}")  # pragma: no cover


def _rule(
    rng: random.Random, head: str, t: SimpleType, nonterminals: dict[str, SimpleType], depth: int
) -> Rule:
    params = tuple((f"x{i}", a) for i, a in enumerate(canonical_args(t)))
    env: dict[str, tuple[SimpleType, SymbolKind]] = {
        name: (ground_type(r), SymbolKind.TERMINAL) for name, r in TERMINALS.items()
    }
    env.update({name: (ty, SymbolKind.NONTERMINAL) for name, ty in nonterminals.items()})
    env.update({name: (ty, SymbolKind.PARAM) for name, ty in params})
    body = _BodyBuilder(rng, env, depth).term(O, depth)
    return Rule(head, params, body)
