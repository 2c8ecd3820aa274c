import random
import time
from functools import reduce
from math import gcd
from typing import Iterable, Sequence, Tuple


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def lcm_all(values: Iterable[int]) -> int:
    return reduce(lcm, values, 1)


def extend(digits: Sequence[int], length: int) -> Tuple[int, ...]:
    """Repeat a periodic block out to `length` (a multiple of its size)."""
    reps, rest = divmod(length, len(digits))
    if rest:
        raise ValueError(f"length {length} is not a multiple of the period {len(digits)}")
    return tuple(digits) * reps


def rotate(digits: Sequence[int], steps: int) -> Tuple[int, ...]:
    """Rotate left by `steps` (negative rotates right)."""
    if not digits:
        return tuple(digits)
    k = steps % len(digits)
    return tuple(digits[k:]) + tuple(digits[:k])


def split_rng(seed: int, stream: int) -> random.Random:
    """Independent generator for sub-stream `stream` of `seed`.

    String seeds are hashed with SHA-512 by `random.Random`, so each stream is
    the same on every platform and independent of how work is scheduled.
    """
    return random.Random(f"quasidyn:{seed}:{stream}")


class Stopwatch:
    """Context manager measuring wall time in milliseconds."""

    def __init__(self) -> None:
        self._start = 0.0
        self.elapsed_ms = 0.0

    def __enter__(self) -> "Stopwatch":
        self._start = time.perf_counter()
        return self

    def __exit__(self, *exc) -> None:
        self.elapsed_ms = round((time.perf_counter() - self._start) * 1000.0, 3)
