# hpl/comptree/dot.py
from __future__ import annotations

from .graph import CompGraph, NodeKind

_SHAPES = {
    NodeKind.APP: "circle",
    NodeKind.LAMBDA: "box",
    NodeKind.VAR: "ellipse",
    NodeKind.TERMINAL: "diamond",
}


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(graph: CompGraph, binders: bool = False) -> str:
    """DOT rendering: shape by node kind, dashed back-edges, dotted binder edges on request."""
    lines = ["digraph comptree {", "  node [fontname=monospace];"]
    for n in graph.nodes:
        label = n.render()
        if n.kind is NodeKind.LAMBDA and n.order:
            label += f" [{n.order}]"
        attrs = [f"label={_quote(label)}", f"shape={_SHAPES[n.kind]}"]
        if n.prime:
            attrs.append("peripheries=2")
        lines.append(f"  n{n.id} [{', '.join(attrs)}];")
    for n in graph.nodes:
        first = 0 if n.kind is NodeKind.APP else 1
        for i, child in enumerate(n.children, start=first):
            style = ", style=dashed" if n.backedge and i == 0 else ""
            lines.append(f"  n{n.id} -> n{child} [label={i}{style}];")
        if binders and n.kind is NodeKind.VAR and n.binder is not None:
            lines.append(
                f"  n{n.id} -> n{n.binder} [style=dotted, constraint=false, label=\"span {n.span}\"];"
            )
    lines.append("}")
    return "\n".join(lines) + "\n"
