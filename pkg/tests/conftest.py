import pytest

from quasidyn.debug import reset_logger

_ENV_VARS = (
    "QUASIDYN_DEBUG",
    "QUASIDYN_LOG",
    "QUASIDYN_MAX_ORDER",
    "QUASIDYN_PERIOD_BOUND",
    "QUASIDYN_SLICE_CAP",
    "QUASIDYN_WORKERS",
)


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for var in _ENV_VARS:
        monkeypatch.delenv(var, raising=False)
    yield
    reset_logger()


@pytest.fixture
def square_file(tmp_path):
    """Write rows to a table file and return its path."""

    def write(rows, name="square.txt", header="# test square\n"):
        path = tmp_path / name
        body = "\n".join(" ".join(str(v) for v in row) for row in rows)
        path.write_text(header + body + "\n", encoding="utf-8")
        return str(path)

    return write
