import json
import re
from fractions import Fraction
from typing import Any, List, Optional, Tuple

from .debug import get_logger
from .errors import DomainError, LatinViolation
from .quasigroup import LatinSquare, check_latin

# Pre-compiled patterns for the small text formats.
_RATIONAL_RE = re.compile(r"^\s*(\d+)\s*/\s*(\d+)\s*$")
_INT_LIST_RE = re.compile(r"^\s*\d+(\s*,\s*\d+)*\s*$")
_COMMENT_RE = re.compile(r"^\s*(#|$)")

_log = get_logger("parser")


def _safe_read(path: str) -> Optional[str]:
    try:
        with open(path, "r", encoding="utf-8", errors="replace") as f:
            return f.read()
    except OSError:
        _log.debug("safe_read: failed to read %s", path)
        return None


def parse_square_text(text: str) -> LatinSquare:
    """n lines of n space-separated integers; blank lines and '#' comments are skipped."""
    rows: List[List[int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if _COMMENT_RE.match(line):
            continue
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError:
            raise DomainError(f"line {lineno}: expected integers, got {line.strip()!r}") from None
    if not rows:
        raise DomainError("no table rows found")
    n = len(rows)
    for x, row in enumerate(rows):
        if len(row) != n:
            raise LatinViolation("row", x, f"row {x} has {len(row)} entries, expected {n}")
    bad = check_latin(rows)
    if bad is not None:
        raise LatinViolation(*bad)
    _log.debug("parse_square_text: order=%d", n)
    return LatinSquare.from_rows(rows)


def read_square(path: str) -> LatinSquare:
    text = _safe_read(path)
    if text is None:
        raise DomainError(f"cannot read {path}")
    return parse_square_text(text)


def format_square_text(square: LatinSquare) -> str:
    width = len(str(square.order - 1))
    return "\n".join(" ".join(str(v).rjust(width) for v in row) for row in square.table) + "\n"


def write_square(path: str, square: LatinSquare) -> None:
    try:
        with open(path, "w", encoding="utf-8") as f:
            f.write(format_square_text(square))
    except OSError as exc:
        raise DomainError(f"cannot write {path}: {exc.strerror}") from None
    _log.debug("write_square: order=%d path=%s", square.order, path)


def parse_digits(text: str) -> Tuple[int, ...]:
    """'012' (one digit per symbol) or '0,11,3' (comma separated, for alphabets over 10)."""
    text = text.strip()
    if not text:
        raise DomainError("empty digit string")
    if "," in text:
        parts = [p.strip() for p in text.split(",")]
    else:
        parts = list(text)
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise DomainError(f"not a digit string: {text!r}") from None


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text)
    if not m:
        raise DomainError(f"expected a rational 'a/b', got {text!r}")
    num, den = int(m.group(1)), int(m.group(2))
    if den == 0:
        raise DomainError("zero denominator")
    return Fraction(num, den)


def parse_int_list(text: str) -> List[int]:
    if not _INT_LIST_RE.match(text):
        raise DomainError(f"expected a comma-separated list of integers, got {text!r}")
    return [int(p) for p in text.split(",")]


def _digits_from_json(value: Any) -> Tuple[int, ...]:
    if isinstance(value, str):
        return parse_digits(value)
    if isinstance(value, int):
        return (value,)
    if isinstance(value, list) and value and all(isinstance(v, int) for v in value):
        return tuple(value)
    raise DomainError(f"cannot read digits from {value!r}")


def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except ValueError as exc:
        raise DomainError(f"invalid JSON: {exc}") from None


def parse_components(text: str, arity: int) -> List[Tuple[int, ...]]:
    """A JSON list with one digit string (or digit list) per coordinate."""
    data = _load_json(text)
    if not isinstance(data, list) or len(data) != arity:
        raise DomainError(f"expected a JSON list of {arity} components")
    return [_digits_from_json(v) for v in data]


def parse_bases(text: str, arity: int) -> List[dict]:
    """A JSON list of `arity` objects; entry k maps coordinate j (j != k) to the base digits z_{k,j}."""
    data = _load_json(text)
    if not isinstance(data, list) or len(data) != arity:
        raise DomainError(f"expected a JSON list of {arity} base objects")
    out = []
    for k, entry in enumerate(data):
        if not isinstance(entry, dict):
            raise DomainError(f"base entry {k} must be a JSON object")
        bases = {}
        for j, v in entry.items():
            if not str(j).strip().isdigit():
                raise DomainError(f"base entry {k} has a non-integer coordinate {j!r}")
            bases[int(j)] = _digits_from_json(v)
        out.append(bases)
    return out
