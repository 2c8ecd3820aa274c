import os
from typing import NamedTuple

from .debug import get_logger

_log = get_logger("config")


class Limits(NamedTuple):
    """Size caps and defaults; every field can be overridden from the environment."""

    max_order: int = 64
    period_bound: int = 8
    slice_cap: int = 100_000
    workers: int = 1
    max_automorphic_order: int = 8
    max_count_order: int = 5
    max_idempotent_search_order: int = 12


_ENV = {
    "max_order": "QUASIDYN_MAX_ORDER",
    "period_bound": "QUASIDYN_PERIOD_BOUND",
    "slice_cap": "QUASIDYN_SLICE_CAP",
    "workers": "QUASIDYN_WORKERS",
}


def load_limits() -> Limits:
    defaults = Limits()
    values = {}
    for field, var in _ENV.items():
        raw = os.environ.get(var)
        if raw is None or not raw.strip():
            continue
        try:
            parsed = int(raw)
        except ValueError:
            parsed = 0
        if parsed < 1:
            _log.warning("ignoring %s=%r: expected a positive integer", var, raw)
            continue
        values[field] = parsed
    limits = defaults._replace(**values)
    _log.debug("limits: %s", limits)
    return limits
