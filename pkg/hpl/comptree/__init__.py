# hpl/comptree/__init__.py
from .binding import (
    check_incremental_binding_static,
    check_incremental_binding_unfold,
    is_incrementally_bound,
)
from .dot import to_dot
from .eta import eta_long, is_eta_long
from .graph import CompGraph, CompNode, NodeKind, build_comp_graph

__all__ = [
    "CompGraph",
    "CompNode",
    "NodeKind",
    "build_comp_graph",
    "check_incremental_binding_static",
    "check_incremental_binding_unfold",
    "eta_long",
    "is_eta_long",
    "is_incrementally_bound",
    "to_dot",
]
