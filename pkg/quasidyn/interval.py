"""The map x -> Mx mod 1 on [0, 1) seen through its base-M digits.

Rationals outside {i/M^k} have eventually periodic, non-terminating expansions,
and the digit map phi turns x -> Mx mod 1 into the one-sided shift. Pulling a
digitwise quasigroup operation back through phi gives an operation that is
undefined whenever the combined digits terminate (end in all 0 or all M-1).
All arithmetic is exact.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence, Tuple

from .debug import get_logger
from .errors import DomainError, NullSetPoint, ProductInNullSet
from .quasigroup import FiniteQuasigroup, mul_digits
from .shift import minimal_period
from .utils import extend, lcm, rotate

_log = get_logger("interval")

Digits = Tuple[int, ...]


def _canonical(pre: Digits, period: Digits) -> Tuple[Digits, Digits]:
    period = period[: minimal_period(period)]
    while pre and pre[-1] == period[-1]:
        period = rotate(period, -1)
        pre = pre[:-1]
    return pre, period


def _null_tail(period: Digits, M: int) -> bool:
    return period == (0,) or period == (M - 1,)


def _to_int(digits: Sequence[int], M: int) -> int:
    value = 0
    for d in digits:
        value = value * M + d
    return value


@dataclass(frozen=True)
class DigitReal:
    """0.d1 d2 ... in base M with digits pre + period repeated forever."""

    M: int
    preperiod: Digits
    period: Digits

    def __post_init__(self) -> None:
        if self.M < 2:
            raise DomainError(f"base must be at least 2, got {self.M}")
        pre = tuple(int(d) for d in self.preperiod)
        period = tuple(int(d) for d in self.period)
        if not period:
            raise DomainError("the repeating block must be nonempty")
        for d in pre + period:
            if not 0 <= d < self.M:
                raise DomainError(f"digit {d} outside base {self.M}")
        pre, period = _canonical(pre, period)
        if _null_tail(period, self.M):
            raise DomainError(f"digits end in a constant {period[0]} tail, which lies in the excluded null set")
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", period)

    def digit(self, i: int) -> int:
        """The (i+1)-th digit after the point."""
        s = len(self.preperiod)
        if i < s:
            return self.preperiod[i]
        return self.period[(i - s) % len(self.period)]

    def digits(self, count: int) -> Digits:
        return tuple(self.digit(i) for i in range(count))

    @property
    def value(self) -> Fraction:
        return phi_inv(self)

    def __str__(self) -> str:
        sep = "" if self.M <= 10 else ","
        pre = sep.join(map(str, self.preperiod))
        rep = sep.join(map(str, self.period))
        return f"0.{pre}({rep})"


def null_witness(x: Fraction, M: int) -> Optional[Tuple[int, int]]:
    """(k, i) with x = i/M^k and k >= 1 minimal, or None if x is not of that form."""
    den = x.denominator
    rest = den
    g = gcd(rest, M)
    while g > 1:
        rest //= g
        g = gcd(rest, M)
    if rest != 1:
        return None
    k = 1
    while (M ** k) % den:
        k += 1
    return k, int(x * M ** k)


def is_null_point(x: Fraction, M: int) -> bool:
    return null_witness(Fraction(x), M) is not None


def phi(x: Fraction, M: int) -> DigitReal:
    """Base-M expansion of x by long division on the exact rational."""
    x = Fraction(x)
    if M < 2:
        raise DomainError(f"base must be at least 2, got {M}")
    if not 0 <= x < 1:
        raise DomainError(f"{x} is outside [0, 1)")
    witness = null_witness(x, M)
    if witness is not None:
        raise NullSetPoint(witness[0], witness[1], M)
    num, den = x.numerator, x.denominator
    seen = {}
    digits = []
    remainder = num
    while remainder not in seen:
        seen[remainder] = len(digits)
        q, remainder = divmod(remainder * M, den)
        digits.append(q)
    start = seen[remainder]
    return DigitReal(M, tuple(digits[:start]), tuple(digits[start:]))


def phi_inv(d: DigitReal) -> Fraction:
    """Sum of the digit series: pre/M^s + period/(M^s (M^L - 1))."""
    M = d.M
    s, L = len(d.preperiod), len(d.period)
    block = M ** L - 1
    numerator = _to_int(d.preperiod, M) * block + _to_int(d.period, M)
    return Fraction(numerator, M ** s * block)


def times_M_mod_1(x: Fraction, M: int) -> Fraction:
    return (Fraction(x) * M) % 1


def T_map(d: DigitReal) -> DigitReal:
    """x -> Mx mod 1, i.e. drop the first digit."""
    if d.preperiod:
        return DigitReal(d.M, d.preperiod[1:], d.period)
    return DigitReal(d.M, (), rotate(d.period, 1))


def _aligned(d: DigitReal, s: int, L: int) -> Tuple[Digits, Digits]:
    """Digits as (preperiod of length s, period of length L)."""
    pre = d.digits(s)
    offset = s - len(d.preperiod)
    return pre, extend(rotate(d.period, offset), L)


def bullet(x: DigitReal, y: DigitReal, base_op: FiniteQuasigroup) -> DigitReal:
    """phi^-1(phi(x) * phi(y)) with * applied digit by digit.

    Raises ProductInNullSet when the combined digits terminate: the pair lies
    outside the full-measure set where the weak operation is defined.
    """
    M = x.M
    if y.M != M or base_op.order != M:
        raise DomainError(f"bases {x.M}, {y.M} and operation order {base_op.order} must agree")
    s = max(len(x.preperiod), len(y.preperiod))
    L = lcm(len(x.period), len(y.period))
    xp, xr = _aligned(x, s, L)
    yp, yr = _aligned(y, s, L)
    pre = mul_digits(base_op, xp, yp)
    period = mul_digits(base_op, xr, yr)
    pre, period = _canonical(pre, period)
    if _null_tail(period, M):
        _log.debug("bullet: undefined for %s * %s", x, y)
        raise ProductInNullSet(x, y)
    return DigitReal(M, pre, period)


def try_bullet(x: DigitReal, y: DigitReal, base_op: FiniteQuasigroup) -> Optional[DigitReal]:
    try:
        return bullet(x, y, base_op)
    except ProductInNullSet:
        return None


def undefined_rate(pairs: Iterable[Tuple[DigitReal, DigitReal]], base_op: FiniteQuasigroup) -> Fraction:
    """Share of pairs whose weak product is undefined."""
    total = 0
    undefined = 0
    for x, y in pairs:
        total += 1
        if try_bullet(x, y, base_op) is None:
            undefined += 1
    if total == 0:
        raise DomainError("no pairs given")
    return Fraction(undefined, total)


def endomorphism_holds(x: DigitReal, y: DigitReal, base_op: FiniteQuasigroup) -> Optional[bool]:
    """T(x*y) == T(x)*T(y), or None when either product is undefined."""
    left = try_bullet(x, y, base_op)
    right = try_bullet(T_map(x), T_map(y), base_op)
    if left is None or right is None:
        return None
    return T_map(left) == right


def conjugacy_holds(x: Fraction, M: int) -> bool:
    """phi(Mx mod 1) == T(phi(x)), computed along both paths."""
    return phi(times_M_mod_1(x, M), M) == T_map(phi(x, M))


def random_admissible(rng: random.Random, M: int, max_denominator: int = 200) -> Fraction:
    """A random rational in (0, 1) whose base-M expansion does not terminate."""
    if max_denominator < 3:
        raise DomainError("max_denominator must be at least 3")
    for _ in range(10_000):
        den = rng.randint(2, max_denominator)
        x = Fraction(rng.randrange(1, den), den)
        if not is_null_point(x, M):
            return x
    raise DomainError(f"no admissible rational with denominator <= {max_denominator} for base {M}")
