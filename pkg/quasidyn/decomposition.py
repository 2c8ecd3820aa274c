"""Product shifts Y = Y_1 x ... x Y_q with componentwise idempotent quasigroups.

Coordinates are numbered from 0 in code. A section on coordinate k freezes
every other coordinate j at a base point z_{k,j}; every point x of Y splits as
x = x_0 * (x_1 * (... * x_{q-1})) with x_k in the k-th section.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import (
    Callable,
    Dict,
    FrozenSet,
    Hashable,
    Iterable,
    List,
    Mapping,
    NamedTuple,
    Optional,
    Sequence,
    Set,
    Tuple,
    TypeVar,
)

import numpy as np

from .config import load_limits
from .debug import get_logger
from .errors import DomainError, ResourceLimitExceeded
from .quasigroup import (
    FiniteQuasigroup,
    build_idempotent_quasigroup,
    is_idempotent,
    left_div_digits,
    mul_digits,
    right_div_digits,
)
from .shift import PeriodicPoint, combine, points_dividing_period, shift_by
from .utils import lcm_all, rotate

_log = get_logger("decomposition")

EXCLUDED_FACTORS = frozenset({2, 6})

T = TypeVar("T", bound=Hashable)


@dataclass(frozen=True)
class ProductShift:
    factors: Tuple[FiniteQuasigroup, ...]

    def __post_init__(self) -> None:
        factors = tuple(self.factors)
        if not factors:
            raise DomainError("a product shift needs at least one factor")
        for k, op in enumerate(factors):
            if not is_idempotent(op.square):
                raise DomainError(f"factor {k} (order {op.order}) is not idempotent")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def from_sizes(cls, sizes: Sequence[int], strict: bool = True) -> "ProductShift":
        """Build Y from alphabet sizes with the default idempotent quasigroups.

        With `strict` the sizes 2 and 6 are refused; `decompose` is only
        guaranteed for products avoiding them.
        """
        if strict:
            bad = [p for p in sizes if p in EXCLUDED_FACTORS]
            if bad:
                raise DomainError(f"factor sizes {bad} are excluded (sizes must avoid 2 and 6)")
        return cls(factors=tuple(build_idempotent_quasigroup(p) for p in sizes))

    @property
    def q(self) -> int:
        return len(self.factors)

    @property
    def alphabets(self) -> Tuple[int, ...]:
        return tuple(op.order for op in self.factors)

    def point(self, *components: Sequence[int]) -> "ProductPoint":
        x = ProductPoint(tuple(PeriodicPoint(p, tuple(d)) for p, d in zip(self.alphabets, components)))
        _check_point(self, x)
        return x


@dataclass(frozen=True)
class ProductPoint:
    components: Tuple[PeriodicPoint, ...]

    @property
    def period(self) -> int:
        return lcm_all(c.period for c in self.components)


@dataclass(frozen=True)
class Section:
    """S_k = {x : x_j = base[j] for every j != k}; base[k] is None."""

    k: int
    base: Tuple[Optional[PeriodicPoint], ...]


class Subquasigroup(NamedTuple):
    carrier: FiniteQuasigroup
    elements: FrozenSet[int]
    generators: FrozenSet[int]
    derivation: Dict[int, Tuple[int, int]]

    def is_closed(self) -> bool:
        elems = np.asarray(sorted(self.elements), dtype=np.intp)
        block = self.carrier.array[np.ix_(elems, elems)]
        return bool(np.isin(block, elems).all())

    def word(self, e: int):
        """Element e written as a bracketed product of generators."""
        if e in self.generators:
            return e
        a, b = self.derivation[e]
        return (self.word(a), self.word(b))


def _check_point(Y: ProductShift, x: ProductPoint) -> None:
    if len(x.components) != Y.q:
        raise DomainError(f"point has {len(x.components)} components, the product has {Y.q}")
    for k, (c, p) in enumerate(zip(x.components, Y.alphabets)):
        if c.alphabet_size != p:
            raise DomainError(f"component {k} is over alphabet {c.alphabet_size}, expected {p}")


def admissible_factorization(N: int, require_nontrivial: bool = False) -> List[Tuple[int, ...]]:
    """All multisets of factors >= 2 with product N and no factor in {2, 6}.

    Factorizations come out in nondecreasing order, sorted. An empty list
    means the decomposition does not apply to N.
    """
    if N < 2:
        raise DomainError(f"N must be at least 2, got {N}")

    def split(n: int, smallest: int) -> Iterable[Tuple[int, ...]]:
        if n == 1:
            yield ()
            return
        for d in range(smallest, n + 1):
            if n % d == 0 and d not in EXCLUDED_FACTORS:
                for rest in split(n // d, d):
                    yield (d,) + rest

    minimum = 2 if require_nontrivial else 1
    return sorted(f for f in split(N, 2) if len(f) >= minimum)


def componentwise_mul(Y: ProductShift, u: ProductPoint, v: ProductPoint) -> ProductPoint:
    _check_point(Y, u)
    _check_point(Y, v)
    return ProductPoint(tuple(combine(op, a, b) for op, a, b in zip(Y.factors, u.components, v.components)))


def reconstruct(Y: ProductShift, parts: Sequence[ProductPoint]) -> ProductPoint:
    """parts[0] * (parts[1] * (... * parts[-1]))."""
    if len(parts) == 0:
        raise DomainError("nothing to multiply")
    acc = parts[-1]
    for part in reversed(parts[:-1]):
        acc = componentwise_mul(Y, part, acc)
    return acc


def shift_product(x: ProductPoint, steps: int = 1) -> ProductPoint:
    return ProductPoint(tuple(shift_by(c, steps) for c in x.components))


def make_section(
    Y: ProductShift, k: int, bases: Optional[Mapping[int, PeriodicPoint]] = None
) -> Section:
    """Section on coordinate k; missing base points default to the constant-0 sequence."""
    if not 0 <= k < Y.q:
        raise DomainError(f"coordinate {k} outside 0..{Y.q - 1}")
    bases = dict(bases or {})
    if k in bases:
        raise DomainError(f"coordinate {k} is the free coordinate and takes no base point")
    base: List[Optional[PeriodicPoint]] = []
    for j, p in enumerate(Y.alphabets):
        if j == k:
            base.append(None)
            continue
        z = bases.pop(j, None)
        if z is None:
            z = PeriodicPoint(p, (0,))
        elif z.alphabet_size != p:
            raise DomainError(f"base point for coordinate {j} is over alphabet {z.alphabet_size}, expected {p}")
        base.append(z)
    if bases:
        raise DomainError(f"base points given for unknown coordinates {sorted(bases)}")
    return Section(k=k, base=tuple(base))


def default_sections(Y: ProductShift) -> List[Section]:
    return [make_section(Y, k) for k in range(Y.q)]


def section_member(Y: ProductShift, sec: Section, free: PeriodicPoint) -> ProductPoint:
    p = Y.alphabets[sec.k]
    if free.alphabet_size != p:
        raise DomainError(f"free point is over alphabet {free.alphabet_size}, coordinate {sec.k} has {p}")
    return ProductPoint(tuple(free if j == sec.k else z for j, z in enumerate(sec.base)))


def is_member(sec: Section, x: ProductPoint) -> bool:
    return all(z is None or x.components[j] == z for j, z in enumerate(sec.base))


def multiply_sections(Y: ProductShift, Q: Section, R: Section) -> Section:
    """Q * R for two sections on the same coordinate; bases multiply pointwise."""
    if Q.k != R.k:
        raise DomainError(f"sections on coordinates {Q.k} and {R.k} do not multiply to a section")
    base = tuple(
        None if a is None else combine(op, a, b) for op, a, b in zip(Y.factors, Q.base, R.base)
    )
    return Section(k=Q.k, base=base)


def sections_disjoint(Q: Section, R: Section) -> bool:
    """Two sections on one coordinate are disjoint exactly when their bases differ."""
    if Q.k != R.k:
        return False
    return Q.base != R.base


def shift_section(sec: Section, steps: int = 1) -> Section:
    return Section(k=sec.k, base=tuple(None if z is None else shift_by(z, steps) for z in sec.base))


def decompose(Y: ProductShift, x: ProductPoint, sections: Sequence[Section]) -> List[ProductPoint]:
    """Solve x = x_0 * (x_1 * (... * x_{q-1})) with x_k in sections[k].

    On coordinate j the nested product reads w_0 * (w_1 * (... * w_{q-1}))
    where w_i is the base z_{i,j} for i != j and w_j is unknown. Levels above j
    are peeled with left division, the fixed tail below j is multiplied out,
    and one right division at level j leaves the free digit.
    """
    _check_point(Y, x)
    q = Y.q
    if len(sections) != q or sorted(s.k for s in sections) != list(range(q)):
        raise DomainError("need exactly one section per coordinate")
    by_coord = {s.k: s for s in sections}
    ordered = [by_coord[k] for k in range(q)]
    for s in ordered:
        for j, z in enumerate(s.base):
            if j != s.k and (z is None or z.alphabet_size != Y.alphabets[j]):
                raise DomainError(f"section on coordinate {s.k} has an invalid base at {j}")

    length = lcm_all(
        [x.period] + [z.period for s in ordered for z in s.base if z is not None]
    )
    free: List[PeriodicPoint] = []
    for j, op in enumerate(Y.factors):
        target = list(x.components[j].block(length))
        w = [None if i == j else ordered[i].base[j].block(length) for i in range(q)]
        for i in range(j):
            target = left_div_digits(op, w[i], target)
        if j < q - 1:
            tail = list(w[q - 1])
            for i in range(q - 2, j, -1):
                tail = mul_digits(op, w[i], tail)
            target = right_div_digits(op, target, tail)
        free.append(PeriodicPoint(op.order, tuple(target)))
    parts = [section_member(Y, ordered[k], free[k]) for k in range(q)]
    _log.debug("decompose: q=%d length=%d", q, length)
    return parts


def check_decomposition_equivariance(
    Y: ProductShift, x: ProductPoint, sections: Sequence[Section], steps: int = 1
) -> bool:
    """Shifting every part reassembles the shifted point, and each shifted
    part lies in the shifted section."""
    parts = decompose(Y, x, sections)
    moved = [shift_product(part, steps) for part in parts]
    in_sections = all(is_member(shift_section(s, steps), m) for s, m in zip(sections, moved))
    return in_sections and reconstruct(Y, moved) == shift_product(x, steps)


def _close(generators: Iterable[T], product: Callable[[T, T], T]) -> Tuple[Set[T], Dict[T, Tuple[T, T]]]:
    """Least product-closed set containing the generators, with one derivation per new element."""
    elements: List[T] = []
    members: Set[T] = set()
    derivation: Dict[T, Tuple[T, T]] = {}
    for g in generators:
        if g not in members:
            members.add(g)
            elements.append(g)
    cursor = 0
    while cursor < len(elements):
        a = elements[cursor]
        cursor += 1
        for b in elements[: cursor]:
            for left, right in ((a, b), (b, a)):
                c = product(left, right)
                if c not in members:
                    members.add(c)
                    elements.append(c)
                    derivation[c] = (left, right)
    return members, derivation


def generated_closure(q: FiniteQuasigroup, S: Iterable[int]) -> Subquasigroup:
    gens = frozenset(S)
    if not gens:
        raise DomainError("the generating set must be nonempty")
    for s in gens:
        if not 0 <= s < q.order:
            raise DomainError(f"symbol {s} out of range for order {q.order}")
    t = q.array
    members, derivation = _close(sorted(gens), lambda a, b: int(t[a, b]))
    return Subquasigroup(carrier=q, elements=frozenset(members), generators=gens, derivation=derivation)


SliceKey = Tuple[Tuple[int, ...], ...]


def _slice_key(x: ProductPoint, P: int) -> SliceKey:
    return tuple(c.block(P) for c in x.components)


def _slice_guard(Y: ProductShift, P: int, cap: Optional[int]) -> None:
    if P < 1:
        raise DomainError(f"period bound must be positive, got {P}")
    if cap is None:
        cap = load_limits().slice_cap
    size = 1
    for p in Y.alphabets:
        size *= p
    size **= P
    if size > cap:
        raise ResourceLimitExceeded("slice size", size, cap)


def orbit_closure(Y: ProductShift, sec: Section, P: int, cap: Optional[int] = None) -> FrozenSet[SliceKey]:
    """Points of period dividing P in the closure of all shifts of the section.

    Only generators inside the period-P slice are used; a product of two
    period-P points stays in the slice.
    """
    _slice_guard(Y, P, cap)
    gens: List[SliceKey] = []
    if all(z is None or P % z.period == 0 for z in sec.base):
        for free in points_dividing_period(Y.alphabets[sec.k], P):
            key = _slice_key(section_member(Y, sec, free), P)
            for n in range(P):
                gens.append(tuple(rotate(c, n) for c in key))
    def product(a: SliceKey, b: SliceKey) -> SliceKey:
        return tuple(mul_digits(op, ca, cb) for op, ca, cb in zip(Y.factors, a, b))

    members, _ = _close(gens, product)
    _log.debug("orbit_closure: k=%d P=%d generators=%d closure=%d", sec.k, P, len(gens), len(members))
    return frozenset(members)


def orbit_closure_membership(
    Y: ProductShift, sec: Section, P: int, x: ProductPoint, cap: Optional[int] = None
) -> bool:
    _check_point(Y, x)
    if P % x.period != 0:
        raise DomainError(f"point of period {x.period} is not in the period-{P} slice")
    return _slice_key(x, P) in orbit_closure(Y, sec, P, cap)
