# hpl/scheme/__init__.py
from .generate import generate_scheme
from .parser import load_scheme, parse_scheme
from .printer import format_scheme
from .rewrite import rewrite_tree
from .safety import homogeneity, is_safe_knu, syntactic_safety_check
from .scheme import RecursionScheme, Rule, dead_rules, lambda_of, validate_scheme
from .tree import CUT, DIVERGENT, ValueTree, is_approximation, parse_sexpr, to_sexpr

__all__ = [
    "CUT",
    "DIVERGENT",
    "RecursionScheme",
    "Rule",
    "ValueTree",
    "dead_rules",
    "format_scheme",
    "generate_scheme",
    "homogeneity",
    "is_approximation",
    "is_safe_knu",
    "lambda_of",
    "load_scheme",
    "parse_scheme",
    "parse_sexpr",
    "rewrite_tree",
    "syntactic_safety_check",
    "to_sexpr",
    "validate_scheme",
]
