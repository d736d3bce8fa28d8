# hpl/scheme/parser.py
from __future__ import annotations

import logging
import re
from pathlib import Path

from ..core.terms import App, Sym, SymbolKind, Term
from ..core.types import O, RankedSymbol, SimpleType, canonical_args, format_type, parse_type
from ..errors import SchemeSyntaxError, SchemeValidationError
from .scheme import RecursionScheme, Rule, build_scheme

logger = logging.getLogger(__name__)

IDENT = r"[A-Za-z][A-Za-z0-9_']*"
_TOKEN = re.compile(rf"\s*(?:({IDENT})|(->|→|=|\(|\)|\.))")
_TERMINAL_DECL = re.compile(rf"({IDENT})\s*:\s*(\d+)")
_NONTERMINAL_DECL = re.compile(rf"%nonterminal\s+({IDENT})\s*:\s*(.+)$")
_START_DECL = re.compile(rf"%start\s+({IDENT})\s*$")

type _Tok = tuple[str, str, int, int]  # kind, text, line, column


def parse_scheme(text: str) -> RecursionScheme:
    """
    Parse and validate a scheme file.

    %terminal g:2 h:1 a:0
    %nonterminal F : (o -> o) -> o
    %start S
    F phi = phi (phi (F h)) .

    Non-terminals with no declaration and no parameters default to type o.
    """
    terminals: dict[str, RankedSymbol] = {}
    declared: dict[str, SimpleType] = {}
    start = "S"
    raw_rules: list[tuple[list[_Tok], list[_Tok]]] = []
    pending: list[_Tok] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("%"):
            if pending:
                raise SchemeSyntaxError("directive inside an unterminated rule", lineno, 1)
            col = line.index("%") + 1
            start = _directive(stripped, lineno, col, terminals, declared, start)
            continue
        for tok in _tokenize(line, lineno):
            pending.append(tok)
            if tok[1] == ".":
                raw_rules.append(_split_rule(pending))
                pending = []
    if pending:
        _, _, line, col = pending[-1]
        raise SchemeSyntaxError("rule is missing its terminating '.'", line, col)

    rules: dict[str, Rule] = {}
    nonterminals: dict[str, SimpleType] = dict(declared)
    heads = [lhs[0][1] for lhs, _ in raw_rules]
    for lhs, _ in raw_rules:
        head = lhs[0][1]
        if head in nonterminals:
            continue
        if len(lhs) > 1:
            raise SchemeValidationError(f"no type declared for non-terminal {head}")
        nonterminals[head] = O

    for lhs, rhs in raw_rules:
        head = lhs[0][1]
        if head in rules:
            raise SchemeValidationError(f"duplicate rule for {head}")
        if head in terminals:
            raise SchemeValidationError(f"{head} is declared as a terminal but has a rule")
        arg_types = canonical_args(nonterminals[head])
        names = [t[1] for t in lhs[1:]]
        if len(names) != len(arg_types):
            raise SchemeValidationError(
                f"rule {head} has {len(names)} parameters, type "
                f"{format_type(nonterminals[head])} needs {len(arg_types)}"
            )
        body = _TermParser(rhs, set(names), nonterminals, terminals).parse()
        rules[head] = Rule(head, tuple(zip(names, arg_types, strict=True)), body)

    logger.debug("[parse_scheme] %d terminals, %d rules (%s)", len(terminals), len(rules), heads)
    return build_scheme(terminals, nonterminals, rules, start)


def load_scheme(path: str | Path) -> RecursionScheme:
    return parse_scheme(Path(path).read_text(encoding="utf-8"))


def _directive(
    stripped: str,
    lineno: int,
    col: int,
    terminals: dict[str, RankedSymbol],
    declared: dict[str, SimpleType],
    start: str,
) -> str:
    keyword = stripped.split()[0]
    if keyword == "%terminal":
        rest = stripped[len(keyword) :].strip()
        found = _TERMINAL_DECL.findall(rest)
        if not found or _TERMINAL_DECL.sub("", rest).strip():
            raise SchemeSyntaxError("expected `%terminal name:rank`", lineno, col)
        for name, rank in found:
            if name in terminals:
                raise SchemeValidationError(f"terminal {name} declared twice")
            terminals[name] = RankedSymbol(name=name, rank=int(rank))
        return start
    if keyword == "%nonterminal":
        m = _NONTERMINAL_DECL.match(stripped)
        if not m:
            raise SchemeSyntaxError("expected `%nonterminal Name : TYPE`", lineno, col)
        if m.group(1) in declared:
            raise SchemeValidationError(f"non-terminal {m.group(1)} declared twice")
        declared[m.group(1)] = parse_type(m.group(2), lineno, col + m.start(2))
        return start
    if keyword == "%start":
        m = _START_DECL.match(stripped)
        if not m:
            raise SchemeSyntaxError("expected `%start Name`", lineno, col)
        return m.group(1)
    raise SchemeSyntaxError(f"unknown directive {keyword}", lineno, col)


def _tokenize(line: str, lineno: int) -> list[_Tok]:
    out: list[_Tok] = []
    pos = 0
    text = line.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            bad = text[pos:].lstrip()
            col = len(text) - len(bad) + 1
            raise SchemeSyntaxError(f"unexpected character {bad[0]!r}", lineno, col)
        if m.group(1):
            out.append(("ident", m.group(1), lineno, m.start(1) + 1))
        else:
            out.append(("punct", m.group(2), lineno, m.start(2) + 1))
        pos = m.end()
    return out


def _split_rule(tokens: list[_Tok]) -> tuple[list[_Tok], list[_Tok]]:
    for i, tok in enumerate(tokens):
        if tok[1] in ("=", "->", "→"):
            lhs, rhs = tokens[:i], tokens[i + 1 : -1]
            if not lhs:
                raise SchemeSyntaxError("rule has no head", tok[2], tok[3])
            for t in lhs:
                if t[0] != "ident":
                    raise SchemeSyntaxError(f"unexpected {t[1]!r} in rule head", t[2], t[3])
            if not rhs:
                raise SchemeSyntaxError("rule has an empty body", tok[2], tok[3])
            return lhs, rhs
    first = tokens[0]
    raise SchemeSyntaxError("expected '=' in rule", first[2], first[3])


class _TermParser:
    """Juxtaposition is left-associative application; parentheses group."""

    def __init__(
        self,
        tokens: list[_Tok],
        params: set[str],
        nonterminals: dict[str, SimpleType],
        terminals: dict[str, RankedSymbol],
    ) -> None:
        self.tokens = tokens
        self.pos = 0
        self.params = params
        self.nonterminals = nonterminals
        self.terminals = terminals

    def parse(self) -> Term:
        term = self._application()
        if self.pos != len(self.tokens):
            _, text, line, col = self.tokens[self.pos]
            raise SchemeSyntaxError(f"unexpected {text!r}", line, col)
        return term

    def _application(self) -> Term:
        term = self._atom()
        while self.pos < len(self.tokens) and self.tokens[self.pos][1] != ")":
            term = App(term, self._atom())
        return term

    def _atom(self) -> Term:
        if self.pos >= len(self.tokens):
            _, _, line, col = self.tokens[-1]
            raise SchemeSyntaxError("unexpected end of rule", line, col)
        kind, text, line, col = self.tokens[self.pos]
        self.pos += 1
        if text == "(":
            inner = self._application()
            if self.pos >= len(self.tokens) or self.tokens[self.pos][1] != ")":
                raise SchemeSyntaxError("missing ')'", line, col)
            self.pos += 1
            return inner
        if kind != "ident":
            raise SchemeSyntaxError(f"unexpected {text!r}", line, col)
        if text in self.params:
            return Sym(text, SymbolKind.PARAM)
        if text in self.nonterminals:
            return Sym(text, SymbolKind.NONTERMINAL)
        if text in self.terminals:
            return Sym(text, SymbolKind.TERMINAL)
        raise SchemeValidationError(f"line {line}:{col}: unknown symbol {text!r}")
