# hpl/engines/__init__.py
from .base import BaseTreeEngine
from .factory import ENGINES, create_engine

__all__ = ["ENGINES", "BaseTreeEngine", "create_engine"]
