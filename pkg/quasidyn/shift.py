from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Iterator, List, NamedTuple, Optional, Sequence, Tuple

from .config import load_limits
from .debug import get_logger
from .errors import DomainError
from .quasigroup import FiniteQuasigroup, default_quasigroup, mul_digits
from .utils import extend, lcm, rotate, split_rng

_log = get_logger("shift")


def minimal_period(digits: Sequence[int]) -> int:
    p = len(digits)
    for d in range(1, p + 1):
        if p % d == 0 and all(digits[i] == digits[i % d] for i in range(d, p)):
            return d
    return p


def canonical_digits(digits: Sequence[int]) -> Tuple[int, ...]:
    """Shortest block that repeats to the same anchored sequence."""
    return tuple(digits[: minimal_period(digits)])


@dataclass(frozen=True)
class PeriodicPoint:
    """The bi-infinite sequence x_i = digits[i mod p], anchored at index 0.

    Digits are always stored at the minimal period, so equal sequences compare
    equal however they were written.
    """

    alphabet_size: int
    digits: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.alphabet_size < 1:
            raise DomainError(f"alphabet size must be positive, got {self.alphabet_size}")
        digits = tuple(int(d) for d in self.digits)
        if not digits:
            raise DomainError("a periodic point needs at least one digit")
        for d in digits:
            if not 0 <= d < self.alphabet_size:
                raise DomainError(f"digit {d} outside alphabet 0..{self.alphabet_size - 1}")
        object.__setattr__(self, "digits", canonical_digits(digits))

    @property
    def period(self) -> int:
        return len(self.digits)

    def __getitem__(self, i: int) -> int:
        return self.digits[i % len(self.digits)]

    def block(self, length: int) -> Tuple[int, ...]:
        """Digits 0..length-1 (length must be a multiple of the period)."""
        return extend(self.digits, length)

    def __str__(self) -> str:
        sep = "" if self.alphabet_size <= 10 else ","
        return sep.join(str(d) for d in self.digits)


@dataclass(frozen=True)
class RotorPoint:
    seq: PeriodicPoint
    rotor: int


@dataclass(frozen=True)
class RotorShiftSystem:
    """Full shift on N symbols times the rotation a -> a+1 on B points."""

    N: int
    B: int
    base_op: FiniteQuasigroup

    def __post_init__(self) -> None:
        if self.B < 1 or self.B % 2 == 0:
            raise DomainError(f"rotor size must be odd and positive, got {self.B}")
        if self.base_op.order != self.N:
            raise DomainError(f"base operation has order {self.base_op.order}, alphabet is {self.N}")

    @classmethod
    def for_entropy(cls, N: int, B: int, base_op: Optional[FiniteQuasigroup] = None) -> "RotorShiftSystem":
        """Model system with entropy log N and ergodic period B."""
        if base_op is None:
            base_op = default_quasigroup(N)
        return cls(N=N, B=B, base_op=base_op)

    @property
    def rotor_lambda(self) -> int:
        return (self.B + 1) // 2

    def point(self, digits: Sequence[int], rotor: int = 0) -> RotorPoint:
        u = RotorPoint(seq=PeriodicPoint(self.N, tuple(digits)), rotor=rotor)
        _check_point(self, u)
        return u


def _check_point(sys: RotorShiftSystem, u: RotorPoint) -> None:
    if u.seq.alphabet_size != sys.N:
        raise DomainError(f"point over alphabet {u.seq.alphabet_size} in a system with N={sys.N}")
    if not 0 <= u.rotor < sys.B:
        raise DomainError(f"rotor {u.rotor} outside 0..{sys.B - 1}")


def shift(x: PeriodicPoint) -> PeriodicPoint:
    return PeriodicPoint(x.alphabet_size, rotate(x.digits, 1))


def shift_by(x: PeriodicPoint, steps: int) -> PeriodicPoint:
    return PeriodicPoint(x.alphabet_size, rotate(x.digits, steps))


def combine(op: FiniteQuasigroup, x: PeriodicPoint, y: PeriodicPoint) -> PeriodicPoint:
    """Apply op coordinatewise; the result has period dividing lcm of the two."""
    if x.alphabet_size != op.order or y.alphabet_size != op.order:
        raise DomainError(
            f"alphabets {x.alphabet_size} and {y.alphabet_size} do not match an operation of order {op.order}"
        )
    length = lcm(x.period, y.period)
    return PeriodicPoint(op.order, mul_digits(op, x.block(length), y.block(length)))


def system_map(sys: RotorShiftSystem, u: RotorPoint) -> RotorPoint:
    _check_point(sys, u)
    return RotorPoint(seq=shift(u.seq), rotor=(u.rotor + 1) % sys.B)


def op_canonical(sys: RotorShiftSystem, u: RotorPoint, v: RotorPoint) -> RotorPoint:
    """((x_i), a) * ((y_i), b) = ((x_i *~ y_i), lam*(a + b) mod B)."""
    _check_point(sys, u)
    _check_point(sys, v)
    return RotorPoint(
        seq=combine(sys.base_op, u.seq, v.seq),
        rotor=sys.rotor_lambda * (u.rotor + v.rotor) % sys.B,
    )


def entropy(sys: RotorShiftSystem) -> float:
    """Topological entropy in nats; the rotor factor contributes nothing."""
    return math.log(sys.N)


def ergodic_period(sys: RotorShiftSystem) -> int:
    return sys.B


def cyclic_piece(sys: RotorShiftSystem, u: RotorPoint) -> int:
    """Index i of the piece C_i = {0..N-1}^Z x {i} containing u."""
    _check_point(sys, u)
    return u.rotor


def points_up_to_period(alphabet: int, max_period: int) -> List[PeriodicPoint]:
    """Every anchored point whose minimal period is at most max_period."""
    seen = set()
    out = []
    for p in range(1, max_period + 1):
        for digits in itertools.product(range(alphabet), repeat=p):
            if minimal_period(digits) != p:
                continue
            if digits not in seen:
                seen.add(digits)
                out.append(PeriodicPoint(alphabet, digits))
    return out


def points_dividing_period(alphabet: int, period: int) -> Iterator[PeriodicPoint]:
    """Every point whose minimal period divides `period` (alphabet**period of them)."""
    for digits in itertools.product(range(alphabet), repeat=period):
        yield PeriodicPoint(alphabet, digits)


def _check_max_period(max_period: int) -> None:
    if max_period < 1:
        raise DomainError(f"period bound must be at least 1, got {max_period}")


def random_point(rng: random.Random, alphabet: int, max_period: int) -> PeriodicPoint:
    """Period uniform in 1..max_period, digits uniform: a sample of the uniform Bernoulli measure."""
    _check_max_period(max_period)
    if alphabet < 1:
        raise DomainError(f"alphabet size must be positive, got {alphabet}")
    p = rng.randint(1, max_period)
    return PeriodicPoint(alphabet, tuple(rng.randrange(alphabet) for _ in range(p)))


def random_rotor_point(rng: random.Random, sys: RotorShiftSystem, max_period: int) -> RotorPoint:
    return RotorPoint(seq=random_point(rng, sys.N, max_period), rotor=rng.randrange(sys.B))


class RotorCycle(NamedTuple):
    index: int
    next_index: int
    sampled: int
    maps_forward: bool


def rotor_cycle(sys: RotorShiftSystem, i: int, max_period: int = 2) -> RotorCycle:
    """The piece C_i, checking that the system map sends it into C_{i+1 mod B}.

    Every point of C_i whose sequence has period at most `max_period` is tried.
    """
    if not 0 <= i < sys.B:
        raise DomainError(f"piece {i} outside 0..{sys.B - 1}")
    _check_max_period(max_period)
    target = (i + 1) % sys.B
    points = [RotorPoint(seq=x, rotor=i) for x in points_up_to_period(sys.N, max_period)]
    forward = all(cyclic_piece(sys, system_map(sys, u)) == target for u in points)
    return RotorCycle(index=i, next_index=target, sampled=len(points), maps_forward=forward)


class AutomorphismReport(NamedTuple):
    pairs: int
    failures: int
    counterexample: Optional[Tuple[RotorPoint, RotorPoint]]
    max_period: int
    seed: Optional[int]

    @property
    def passed(self) -> bool:
        return self.failures == 0


def _commutes(sys: RotorShiftSystem, u: RotorPoint, v: RotorPoint) -> bool:
    return system_map(sys, op_canonical(sys, u, v)) == op_canonical(sys, system_map(sys, u), system_map(sys, v))


def check_automorphism_random(
    sys: RotorShiftSystem,
    trials: int,
    seed: int = 0,
    max_period: Optional[int] = None,
) -> AutomorphismReport:
    """Check S(u*v) = S(u)*S(v) on `trials` sampled pairs.

    Trial i draws from its own generator derived from (seed, i), so the report
    depends only on the seed.
    """
    if trials < 1:
        raise DomainError(f"trials must be at least 1, got {trials}")
    if max_period is None:
        max_period = load_limits().period_bound
    _check_max_period(max_period)
    failures = 0
    counterexample = None
    for i in range(trials):
        rng = split_rng(seed, i)
        u = random_rotor_point(rng, sys, max_period)
        v = random_rotor_point(rng, sys, max_period)
        if not _commutes(sys, u, v):
            failures += 1
            if counterexample is None:
                counterexample = (u, v)
    _log.debug("check_automorphism_random: N=%d B=%d trials=%d failures=%d", sys.N, sys.B, trials, failures)
    return AutomorphismReport(
        pairs=trials, failures=failures, counterexample=counterexample, max_period=max_period, seed=seed
    )


def check_automorphism_exhaustive(sys: RotorShiftSystem, max_period: int) -> AutomorphismReport:
    """Same identity over every pair of rotor points with sequence period <= max_period."""
    _check_max_period(max_period)
    points = [
        RotorPoint(seq=x, rotor=a) for x in points_up_to_period(sys.N, max_period) for a in range(sys.B)
    ]
    failures = 0
    counterexample = None
    for u in points:
        for v in points:
            if not _commutes(sys, u, v):
                failures += 1
                if counterexample is None:
                    counterexample = (u, v)
    _log.debug("check_automorphism_exhaustive: points=%d failures=%d", len(points), failures)
    return AutomorphismReport(
        pairs=len(points) ** 2, failures=failures, counterexample=counterexample, max_period=max_period, seed=None
    )
