# hpl/core/terms.py
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from enum import StrEnum

from ..errors import TypeMismatch, UnknownSymbol
from .types import SimpleType, arrows, format_type


class SymbolKind(StrEnum):
    TERMINAL = "terminal"
    NONTERMINAL = "nonterminal"
    PARAM = "param"


@dataclass(frozen=True, slots=True)
class Sym:
    name: str
    kind: SymbolKind = SymbolKind.PARAM

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class App:
    fun: Term
    arg: Term

    def __str__(self) -> str:
        return format_term(self)


@dataclass(frozen=True, slots=True)
class Lam:
    """λ x1 ... xn . body; an empty parameter tuple is a dummy lambda."""

    params: tuple[tuple[str, SimpleType], ...]
    body: Term

    def __str__(self) -> str:
        return format_term(self)


# Applicative terms are Sym/App trees; Lam only appears in lambda terms.
type AppTerm = Sym | App
type Term = Sym | App | Lam


def apply(head: Term, args: list[Term] | tuple[Term, ...]) -> Term:
    t = head
    for a in args:
        t = App(t, a)
    return t


def spine(term: Term) -> tuple[Term, list[Term]]:
    """Split `h a1 ... ak` into (h, [a1, ..., ak])."""
    args: list[Term] = []
    while isinstance(term, App):
        args.append(term.arg)
        term = term.fun
    args.reverse()
    return term, args


def operand_subterms(term: Term) -> list[Term]:
    """Every n with an occurrence `m n` somewhere in `term`, outermost first."""
    out: list[Term] = []
    stack = [term]
    while stack:
        t = stack.pop()
        if isinstance(t, App):
            out.append(t.arg)
            stack.append(t.arg)
            stack.append(t.fun)
        elif isinstance(t, Lam):
            stack.append(t.body)
    return out


def symbols_of(term: Term) -> list[Sym]:
    out: list[Sym] = []
    stack = [term]
    while stack:
        t = stack.pop()
        if isinstance(t, Sym):
            out.append(t)
        elif isinstance(t, App):
            stack.append(t.arg)
            stack.append(t.fun)
        else:
            stack.append(t.body)
    return out


def substitute(term: Term, mapping: Mapping[str, Term]) -> Term:
    """Replace parameter occurrences. Applicative terms only, so no capture."""
    if isinstance(term, Sym):
        if term.kind is SymbolKind.PARAM and term.name in mapping:
            return mapping[term.name]
        return term
    if isinstance(term, App):
        return App(substitute(term.fun, mapping), substitute(term.arg, mapping))
    raise TypeError("substitute is defined on applicative terms")


def check_term(term: Term, env: Mapping[str, SimpleType]) -> SimpleType:
    """
    Type of `term` under `env`.

    Raises UnknownSymbol for names missing from env and TypeMismatch when an
    operator's argument type differs from its operand's type.
    """
    if isinstance(term, Sym):
        try:
            return env[term.name]
        except KeyError:
            raise UnknownSymbol(term.name) from None
    if isinstance(term, Lam):
        inner = dict(env)
        inner.update(dict(term.params))
        return arrows([t for _, t in term.params], check_term(term.body, inner))
    fun_t = check_term(term.fun, env)
    arg_t = check_term(term.arg, env)
    if fun_t.arg is None:
        raise TypeMismatch(f"{format_term(term.fun)} : o is applied to {format_term(term.arg)}")
    if fun_t.arg != arg_t:
        raise TypeMismatch(
            f"{format_term(term.fun)} expects {format_type(fun_t.arg)}, "
            f"got {format_term(term.arg)} : {format_type(arg_t)}"
        )
    assert fun_t.result is not None
    return fun_t.result


def format_term(term: Term) -> str:
    if isinstance(term, Sym):
        return term.name
    if isinstance(term, Lam):
        names = " ".join(n for n, _ in term.params)
        return f"λ{names}. {format_term(term.body)}" if names else f"λ. {format_term(term.body)}"
    head, args = spine(term)
    parts = [_format_operand(head)] + [_format_operand(a) for a in args]
    return " ".join(parts)


def _format_operand(term: Term) -> str:
    if isinstance(term, Sym):
        return term.name
    return f"({format_term(term)})"
