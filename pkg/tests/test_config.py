from quasidyn.config import Limits, load_limits


def test_defaults():
    limits = load_limits()
    assert limits == Limits()
    assert (limits.max_order, limits.period_bound, limits.slice_cap, limits.workers) == (64, 8, 100_000, 1)


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("QUASIDYN_MAX_ORDER", "20")
    monkeypatch.setenv("QUASIDYN_PERIOD_BOUND", "4")
    monkeypatch.setenv("QUASIDYN_SLICE_CAP", "500")
    monkeypatch.setenv("QUASIDYN_WORKERS", "3")
    limits = load_limits()
    assert (limits.max_order, limits.period_bound, limits.slice_cap, limits.workers) == (20, 4, 500, 3)


def test_invalid_values_fall_back(monkeypatch, caplog):
    monkeypatch.setenv("QUASIDYN_MAX_ORDER", "lots")
    monkeypatch.setenv("QUASIDYN_WORKERS", "-2")
    monkeypatch.setenv("QUASIDYN_PERIOD_BOUND", " ")
    with caplog.at_level("WARNING", logger="quasidyn"):
        limits = load_limits()
    assert limits == Limits()
    assert "QUASIDYN_MAX_ORDER" in caplog.text
    assert "QUASIDYN_WORKERS" in caplog.text
