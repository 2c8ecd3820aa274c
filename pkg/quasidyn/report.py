from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, List, NamedTuple, Optional

from rich import box
from rich.console import Group, RenderableType
from rich.table import Table
from rich.text import Text

from .quasigroup import FiniteQuasigroup, LatinSquare
from .shift import PeriodicPoint, RotorPoint

SCHEMA_VERSION = 1


class Report(NamedTuple):
    """Outcome of one CLI command.

    Only `elapsed_ms` may differ between two runs with the same inputs and seed.
    """

    command: str
    inputs: Dict[str, Any]
    outputs: Dict[str, Any]
    checks: Dict[str, bool]
    seed: Optional[int] = None
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> Dict[str, Any]:
        return {
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "checks": dict(self.checks),
            "passed": self.passed,
            "seed": self.seed,
            "elapsed_ms": self.elapsed_ms,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


def square_to_json(square: LatinSquare) -> Dict[str, Any]:
    return {"order": square.order, "table": square.rows()}


def quasigroup_to_json(q: FiniteQuasigroup) -> Dict[str, Any]:
    out = square_to_json(q.square)
    out["flags"] = {
        "is_idempotent": q.is_idempotent,
        "automorphic_translation": list(q.automorphic_translation.image) if q.automorphic_translation else None,
    }
    return out


def point_to_json(x: PeriodicPoint) -> Dict[str, Any]:
    return {"alphabet_size": x.alphabet_size, "digits": list(x.digits)}


def rotor_point_to_json(u: RotorPoint) -> Dict[str, Any]:
    return {"seq": point_to_json(u.seq), "rotor": u.rotor}


def fraction_to_json(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def square_table(square: LatinSquare, title: Optional[str] = None) -> Table:
    """Grid with row/column headers; the diagonal is dimmed so idempotency reads at a glance."""
    table = Table(
        title=title,
        show_header=True,
        header_style="bold",
        show_edge=False,
        pad_edge=False,
        box=box.SIMPLE,
    )
    table.add_column("*", style="bold", justify="right")
    for y in range(square.order):
        table.add_column(str(y), justify="right")
    for x, row in enumerate(square.table):
        cells = [Text(str(v), style="dim" if x == y else "") for y, v in enumerate(row)]
        table.add_row(str(x), *cells)
    return table


def checks_table(checks: Dict[str, bool]) -> Table:
    table = Table(show_header=True, header_style="bold", show_edge=False, box=box.SIMPLE)
    table.add_column("check")
    table.add_column("result")
    for name, ok in checks.items():
        table.add_row(name, Text("PASS", style="green") if ok else Text("FAIL", style="bold red"))
    return table


def _format_value(value: Any) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True)
    return str(value)


def render_text(report: Report, squares: Optional[List[LatinSquare]] = None) -> RenderableType:
    fields = Table(show_header=False, show_edge=False, box=box.SIMPLE, pad_edge=False)
    fields.add_column("key", style="cyan", no_wrap=True)
    fields.add_column("value", overflow="fold")
    fields.add_row("command", report.command)
    for key, value in report.inputs.items():
        fields.add_row(key, _format_value(value))
    if report.seed is not None:
        fields.add_row("seed", str(report.seed))
    for key, value in report.outputs.items():
        if key == "square":
            continue
        fields.add_row(key, _format_value(value))
    fields.add_row("elapsed_ms", f"{report.elapsed_ms:.1f}")
    parts: List[RenderableType] = [fields]
    for square in squares or []:
        parts.append(square_table(square))
    if report.checks:
        parts.append(checks_table(report.checks))
    return Group(*parts)

