# hpl/config.py

from __future__ import annotations

import os
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field

FIXTURE_DIR = Path(__file__).parent / "fixtures"


class EngineConfig(BaseModel):
    """
    Runtime knobs shared by the CLI, Workbench and tests.

    - depth: value-tree levels to generate
    - budget: rewriting / machine steps allowed per tree position
    - steps: → steps for monitor, lockstep and trace runs
    - seed: first seed for random scheme generation
    - unfold_limit: node cap for the unfolding binder check
    - fixture_dir: extra directory searched for FILE arguments
    """

    depth: int = Field(default=8, ge=1)
    budget: int = Field(default=100_000, ge=1)
    steps: int = Field(default=2000, ge=0)
    seed: int = 0
    unfold_limit: int = Field(default=200_000, ge=1)
    fixture_dir: Path | None = None


_ENV = {
    "depth": "HPL_DEPTH",
    "budget": "HPL_BUDGET",
    "steps": "HPL_STEPS",
    "seed": "HPL_SEED",
    "unfold_limit": "HPL_UNFOLD_LIMIT",
}


def resolve_config(config: dict[str, Any] | EngineConfig | None = None) -> EngineConfig:
    """Explicit value, then HPL_* environment variable, then default."""
    if isinstance(config, EngineConfig):
        return config
    config = config or {}
    values: dict[str, Any] = {}
    for field, env_name in _ENV.items():
        raw = config.get(field)
        if raw is None:
            raw = os.getenv(env_name)
            if raw is None:
                continue
            try:
                raw = int(raw)
            except ValueError:
                raise ValueError(f"{env_name} must be an integer, got {raw!r}") from None
        values[field] = raw

    fixture_dir = config.get("fixture_dir") or os.getenv("HPL_FIXTURE_DIR")
    if fixture_dir:
        values["fixture_dir"] = Path(fixture_dir)

    try:
        return EngineConfig(**values)
    except ValueError as e:
        raise ValueError(f"invalid hpl configuration: {e}") from e


def resolve_input(name: str | Path, cfg: EngineConfig | None = None) -> Path:
    """A FILE argument as given, else under fixture_dir, else among the bundled fixtures."""
    p = Path(name)
    if p.exists():
        return p
    for base in (cfg.fixture_dir if cfg else None, FIXTURE_DIR):
        if base is None:
            continue
        candidate = Path(base) / p
        if candidate.exists():
            return candidate
    raise FileNotFoundError(f"no such scheme or PDA file: {name}")
