import json
from fractions import Fraction

from rich.console import Console

from quasidyn.quasigroup import build_translation_quasigroup
from quasidyn.report import (
    SCHEMA_VERSION,
    Report,
    fraction_to_json,
    quasigroup_to_json,
    render_text,
)


def test_report_json():
    report = Report("demo", {"n": 3}, {"count": 3}, {"ok": True}, seed=4, elapsed_ms=1.5)
    data = json.loads(report.dumps())
    assert data == {
        "schema": SCHEMA_VERSION,
        "command": "demo",
        "inputs": {"n": 3},
        "outputs": {"count": 3},
        "checks": {"ok": True},
        "passed": True,
        "seed": 4,
        "elapsed_ms": 1.5,
    }


def test_passed_needs_every_check():
    assert Report("demo", {}, {}, {}).passed
    assert not Report("demo", {}, {}, {"a": True, "b": False}).passed


def test_serializers():
    q = quasigroup_to_json(build_translation_quasigroup(3))
    assert q["table"] == [[0, 2, 1], [2, 1, 0], [1, 0, 2]]
    assert q["flags"] == {"is_idempotent": True, "automorphic_translation": [1, 2, 0]}
    assert fraction_to_json(Fraction(2, 4)) == "1/2"


def test_render_text():
    q = build_translation_quasigroup(3)
    report = Report("latin build-translation", {"n": 3}, {"square": quasigroup_to_json(q)}, {"latin": True, "odd": False})
    console = Console(width=100, record=True)
    console.print(render_text(report, [q.square]))
    text = console.export_text()
    assert "PASS" in text and "FAIL" in text
    assert "latin build-translation" in text
    assert '"table"' not in text
