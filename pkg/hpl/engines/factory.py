# hpl/engines/factory.py
from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from ..scheme.scheme import RecursionScheme
    from .base import BaseTreeEngine

ENGINES = ("rewrite", "cpda", "pda")


# lazy imports so the rewrite engine does not pull in the machine layers
def create_engine(name: str, scheme: RecursionScheme, check: bool = True) -> BaseTreeEngine:
    if name == "rewrite":
        from .rewrite_engine import RewriteEngine

        return RewriteEngine(scheme)

    if name == "cpda":
        from .machine_engine import CpdaEngine

        return CpdaEngine(scheme)

    if name == "pda":
        from .machine_engine import PdaEngine

        return PdaEngine(scheme, check=check)

    raise ValueError(f"unknown engine {name!r}; choose one of {', '.join(ENGINES)}")
