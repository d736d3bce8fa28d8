# hpl/scheme/printer.py
from __future__ import annotations

from ..core.terms import format_term
from ..core.types import format_type
from .scheme import RecursionScheme


def format_scheme(g: RecursionScheme, header: str | None = None) -> str:
    """Render `g` in the fixture grammar; parse_scheme(format_scheme(g)) rebuilds it."""
    lines: list[str] = []
    if header:
        lines.extend(f"# {h}" for h in header.splitlines())
    for t in g.terminals.values():
        lines.append(f"%terminal {t.name}:{t.rank}")
    for name, t in g.nonterminals.items():
        lines.append(f"%nonterminal {name} : {format_type(t)}")
    lines.append(f"%start {g.start}")
    lines.append("")
    for head, rule in g.rules.items():
        lhs = " ".join([head, *rule.param_names])
        lines.append(f"{lhs} = {format_term(rule.body)} .")
    return "\n".join(lines) + "\n"
