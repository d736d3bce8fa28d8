# tests/test_config.py
import pytest

from hpl.config import FIXTURE_DIR, EngineConfig, resolve_config, resolve_input


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ("HPL_DEPTH", "HPL_BUDGET", "HPL_STEPS", "HPL_SEED", "HPL_UNFOLD_LIMIT", "HPL_FIXTURE_DIR"):
        monkeypatch.delenv(name, raising=False)


def test_defaults():
    cfg = resolve_config()
    assert cfg == EngineConfig()
    assert (cfg.depth, cfg.budget, cfg.steps, cfg.seed) == (8, 100_000, 2000, 0)


def test_environment_then_explicit(monkeypatch):
    monkeypatch.setenv("HPL_DEPTH", "5")
    monkeypatch.setenv("HPL_STEPS", "10")
    assert resolve_config().depth == 5
    cfg = resolve_config({"depth": 3})
    assert cfg.depth == 3
    assert cfg.steps == 10


def test_config_object_passes_through():
    cfg = EngineConfig(depth=2)
    assert resolve_config(cfg) is cfg


def test_bad_environment_value(monkeypatch):
    monkeypatch.setenv("HPL_BUDGET", "lots")
    with pytest.raises(ValueError, match="HPL_BUDGET"):
        resolve_config()


def test_out_of_range_value():
    with pytest.raises(ValueError, match="invalid hpl configuration"):
        resolve_config({"depth": 0})


def test_resolve_input(tmp_path, monkeypatch):
    assert resolve_input("example2.hors") == FIXTURE_DIR / "example2.hors"
    own = tmp_path / "mine.hors"
    own.write_text("%terminal a:0\nS = a .\n")
    assert resolve_input(own) == own
    monkeypatch.setenv("HPL_FIXTURE_DIR", str(tmp_path))
    assert resolve_input("mine.hors", resolve_config()) == own
    with pytest.raises(FileNotFoundError):
        resolve_input("nothing-here.hors")
