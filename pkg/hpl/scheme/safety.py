# hpl/scheme/safety.py
from __future__ import annotations

from typing import TYPE_CHECKING

from ..core.terms import SymbolKind, check_term, format_term, operand_subterms, symbols_of
from ..core.types import is_homogeneous, type_order
from ..models import Violation

if TYPE_CHECKING:
    from .scheme import RecursionScheme


def homogeneity(g: RecursionScheme) -> dict[str, bool]:
    return {name: is_homogeneous(t) for name, t in g.nonterminals.items()}


def syntactic_safety_check(g: RecursionScheme) -> list[Violation]:
    """
    One Violation per operand-position subterm holding a parameter of order
    strictly below the subterm's own order. Homogeneity is not looked at.
    """
    out: list[Violation] = []
    for head, rule in g.rules.items():
        env = g.rule_env(head)
        param_orders = {name: type_order(t) for name, t in rule.params}
        for sub in operand_subterms(rule.body):
            sub_order = type_order(check_term(sub, env))
            if sub_order == 0:
                continue
            low = [
                (param_orders[s.name], s.name)
                for s in symbols_of(sub)
                if s.kind is SymbolKind.PARAM and param_orders[s.name] < sub_order
            ]
            if low:
                p_order, p_name = min(low)
                out.append(
                    Violation(
                        rule=head,
                        subterm=format_term(sub),
                        subterm_order=sub_order,
                        parameter=p_name,
                        parameter_order=p_order,
                    )
                )
    return out


def is_safe_knu(g: RecursionScheme) -> bool:
    return all(homogeneity(g).values()) and not syntactic_safety_check(g)
