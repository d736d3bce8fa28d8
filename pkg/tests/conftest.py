# tests/conftest.py
import os

import pytest
from hypothesis import HealthCheck, settings

from hpl.config import FIXTURE_DIR
from hpl.pda.pdafile import load_pda
from hpl.scheme.parser import load_scheme

# HPL_TEST_SCALE=full runs every sweep at acceptance size
FULL_SCALE = os.getenv("HPL_TEST_SCALE") == "full"

settings.register_profile("default", max_examples=60, deadline=None)
settings.register_profile(
    "acceptance",
    max_examples=10_000,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "acceptance" if FULL_SCALE else "default"))

MONITOR_STEPS = 10_000 if FULL_SCALE else 600
LOCKSTEP_STEPS = 2000 if FULL_SCALE else 500
REACHABLE_STEPS = 2000 if FULL_SCALE else 200
TREE_DEPTH, TREE_BUDGET = (8, 100_000) if FULL_SCALE else (6, 10_000)

# schemes whose variables are all incrementally bound
IB_SCHEMES = [
    "order1_chain",
    "nonhomog",
    "twice_compose",
    "order3_hg",
    "order3_loop",
    "ground_nt",
    "swap_args",
    "twice_finite",
    "trivial",
    "dead_rule",
]

PDA_FIXTURES = ["fchain", "push_pop", "counter", "push2_pop2", "copy_count", "stuck"]


@pytest.fixture
def scheme():
    def _load(name: str):
        return load_scheme(FIXTURE_DIR / f"{name}.hors")

    return _load


@pytest.fixture
def pda():
    def _load(name: str):
        return load_pda(FIXTURE_DIR / f"{name}.pda")

    return _load
