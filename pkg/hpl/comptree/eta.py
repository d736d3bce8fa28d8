# hpl/comptree/eta.py
from __future__ import annotations

import itertools
from collections.abc import Iterator, Mapping

from ..core.terms import App, Lam, Sym, SymbolKind, Term, apply, check_term, format_term, spine
from ..core.types import SimpleType, canonical_args, format_type
from ..errors import TypeMismatch


def eta_long(
    term: Term,
    type_: SimpleType,
    env: Mapping[str, SimpleType],
    fresh: Iterator[str] | None = None,
) -> Lam:
    """
    η-long normal form of `term` at `type_`.

    The result is always a Lam: ground subterms get a dummy lambda (no
    parameters), and every argument in a spine is itself η-long. Fresh
    variables are named `_x1`, `_x2`, ... which cannot clash with fixture
    identifiers.
    """
    actual = check_term(term, env)
    if actual != type_:
        raise TypeMismatch(
            f"{format_term(term)} has type {format_type(actual)}, expected {format_type(type_)}"
        )
    names = fresh if fresh is not None else (f"_x{i}" for i in itertools.count(1))
    return _eta(term, type_, dict(env), names)


def _eta(term: Term, type_: SimpleType, env: dict[str, SimpleType], fresh: Iterator[str]) -> Lam:
    params: tuple[tuple[str, SimpleType], ...] = ()
    body = term
    if isinstance(term, Lam):
        params = term.params
        body = term.body
    inner = dict(env)
    inner.update(params)
    remaining = canonical_args(type_)[len(params) :]
    extra = tuple((next(fresh), t) for t in remaining)
    inner.update(extra)
    body = apply(body, [Sym(name, SymbolKind.PARAM) for name, _ in extra])
    return Lam(params + extra, _eta_ground(body, inner, fresh))


def _eta_ground(term: Term, env: dict[str, SimpleType], fresh: Iterator[str]) -> Term:
    head, args = spine(term)
    if isinstance(head, Lam):
        head_type = check_term(head, env)
        new_head: Term = _eta(head, head_type, env, fresh)
    elif isinstance(head, Sym):
        head_type = env[head.name]
        new_head = head
    else:  # pragma: no cover - spine never returns App
        raise TypeError(head)
    arg_types = canonical_args(head_type)
    if len(args) != len(arg_types):
        raise TypeMismatch(f"{format_term(term)} is not of ground type")
    new_args = [_eta(a, t, env, fresh) for a, t in zip(args, arg_types, strict=True)]
    return apply(new_head, new_args)


def is_eta_long(term: Term) -> bool:
    """Shape check: lambdas alternate with spines whose arguments are lambdas."""
    if not isinstance(term, Lam):
        return False
    head, args = spine(term.body)
    if isinstance(head, App):
        return False
    if isinstance(head, Lam) and not is_eta_long(head):
        return False
    return all(is_eta_long(a) for a in args)
