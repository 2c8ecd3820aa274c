from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.typing import NDArray

from .config import load_limits
from .debug import get_logger
from .errors import (
    DomainError,
    EvenOrderUnsupported,
    LatinViolation,
    NoIdempotentSquare,
    ResourceLimitExceeded,
)

_log = get_logger("quasigroup")

Table = Tuple[Tuple[int, ...], ...]
Grid = Union[Sequence[Sequence[int]], NDArray[np.int64]]


def to_table(a: NDArray[np.int64]) -> Table:
    """Hashable tuple view of an integer array."""
    return tuple(map(tuple, a.tolist()))


def check_latin(rows: Grid) -> Optional[Tuple[str, int]]:
    """Return the first (axis, index) whose line is not a permutation, or None."""
    n = len(rows)
    for x, row in enumerate(rows):
        if len(row) != n:
            return ("row", x)
    a = np.asarray(rows, dtype=np.int64).reshape(n, n)
    symbols = np.arange(n)
    bad = np.flatnonzero((np.sort(a, axis=1) != symbols).any(axis=1))
    if bad.size:
        return ("row", int(bad[0]))
    bad = np.flatnonzero((np.sort(a, axis=0) != symbols[:, None]).any(axis=0))
    if bad.size:
        return ("column", int(bad[0]))
    return None


@dataclass(frozen=True)
class LatinSquare:
    """An n x n table whose rows and columns are permutations of 0..n-1.

    Entry ``array[x, y]`` is the product x*y; ``table`` is the same data as
    nested tuples and is what equality and hashing see. Division tables are
    built once at construction so both divisions are lookups.
    """

    order: int
    table: Table
    array: NDArray[np.int64] = field(init=False, repr=False, compare=False)
    _left: NDArray[np.int64] = field(init=False, repr=False, compare=False)
    _right: NDArray[np.int64] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(v) for v in row) for row in self.table)
        if self.order < 1:
            raise DomainError(f"order must be positive, got {self.order}")
        if len(rows) != self.order:
            raise DomainError(f"expected {self.order} rows, got {len(rows)}")
        bad = check_latin(rows)
        if bad is not None:
            raise LatinViolation(*bad)
        a = np.asarray(rows, dtype=np.int64)
        idx = np.arange(self.order)
        left = np.empty_like(a)
        right = np.empty_like(a)
        # x*y = z  =>  left[x, z] = y and right[z, y] = x
        left[idx[:, None], a] = idx[None, :]
        right[a, idx[None, :]] = idx[:, None]
        for arr in (a, left, right):
            arr.setflags(write=False)
        object.__setattr__(self, "table", rows)
        object.__setattr__(self, "array", a)
        object.__setattr__(self, "_left", left)
        object.__setattr__(self, "_right", right)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "LatinSquare":
        return cls(order=len(rows), table=tuple(tuple(r) for r in rows))

    @classmethod
    def from_array(cls, a: NDArray[np.int64]) -> "LatinSquare":
        return cls(order=int(a.shape[0]), table=to_table(np.asarray(a, dtype=np.int64)))

    def rows(self) -> List[List[int]]:
        return self.array.tolist()


@dataclass(frozen=True)
class Permutation:
    image: Tuple[int, ...]

    def __post_init__(self) -> None:
        image = tuple(int(v) for v in self.image)
        if sorted(image) != list(range(len(image))):
            raise DomainError(f"{image} is not a permutation of 0..{len(image) - 1}")
        object.__setattr__(self, "image", image)

    @property
    def order(self) -> int:
        return len(self.image)

    def __call__(self, x: int) -> int:
        return self.image[x]

    def is_translation(self) -> bool:
        """True when the orbit of 0 (hence of every point) is the whole set."""
        n = self.order
        seen, x = 0, 0
        while True:
            x = self.image[x]
            seen += 1
            if x == 0:
                return seen == n


@dataclass(frozen=True)
class FiniteQuasigroup:
    square: LatinSquare
    is_idempotent: bool = False
    automorphic_translation: Optional[Permutation] = None

    def __post_init__(self) -> None:
        if self.is_idempotent and not is_idempotent(self.square):
            raise DomainError("square flagged idempotent has x*x != x somewhere")
        s = self.automorphic_translation
        if s is not None and not _preserves(self.square, s):
            raise DomainError("flagged translation is not an automorphism of the square")

    @property
    def order(self) -> int:
        return self.square.order

    @property
    def table(self) -> Table:
        return self.square.table

    @property
    def array(self) -> NDArray[np.int64]:
        return self.square.array


def _check_symbol(q: FiniteQuasigroup, *symbols: int) -> None:
    n = q.order
    for s in symbols:
        if not 0 <= s < n:
            raise DomainError(f"symbol {s} out of range for order {n}")


def _check_order(n: int) -> None:
    if n < 1:
        raise DomainError(f"order must be positive, got {n}")
    limit = load_limits().max_order
    if n > limit:
        raise ResourceLimitExceeded("order", n, limit)


def mul(q: FiniteQuasigroup, x: int, y: int) -> int:
    _check_symbol(q, x, y)
    return int(q.square.array[x, y])


def left_div(q: FiniteQuasigroup, x: int, z: int) -> int:
    """The unique y with x*y = z."""
    _check_symbol(q, x, z)
    return int(q.square._left[x, z])


def right_div(q: FiniteQuasigroup, z: int, y: int) -> int:
    """The unique x with x*y = z."""
    _check_symbol(q, z, y)
    return int(q.square._right[z, y])


def _indices(xs: Sequence[int]) -> NDArray[np.intp]:
    return np.asarray(xs, dtype=np.intp)


def mul_digits(q: FiniteQuasigroup, xs: Sequence[int], ys: Sequence[int]) -> Tuple[int, ...]:
    """Coordinatewise product of two digit blocks of equal length."""
    return tuple(q.square.array[_indices(xs), _indices(ys)].tolist())


def left_div_digits(q: FiniteQuasigroup, xs: Sequence[int], zs: Sequence[int]) -> Tuple[int, ...]:
    return tuple(q.square._left[_indices(xs), _indices(zs)].tolist())


def right_div_digits(q: FiniteQuasigroup, zs: Sequence[int], ys: Sequence[int]) -> Tuple[int, ...]:
    return tuple(q.square._right[_indices(zs), _indices(ys)].tolist())


def is_idempotent(square: LatinSquare) -> bool:
    return bool((np.diagonal(square.array) == np.arange(square.order)).all())


def is_commutative(square: LatinSquare) -> bool:
    a = square.array
    return bool((a == a.T).all())


def is_associative(square: LatinSquare) -> bool:
    """(x*y)*z = x*(y*z) for every triple; a finite quasigroup passes iff it is a group."""
    a = square.array
    # both sides indexed [x, y, z]
    return bool((a[a, :] == a[:, a]).all())


def translation(n: int) -> Permutation:
    """s(x) = x + 1 mod n."""
    return Permutation(tuple((x + 1) % n for x in range(n)))


def identity_permutation(n: int) -> Permutation:
    return Permutation(tuple(range(n)))


def _preserves(square: LatinSquare, f: Permutation) -> bool:
    a = square.array
    img = np.asarray(f.image, dtype=np.int64)
    return bool((a[np.ix_(img, img)] == img[a]).all())


def is_automorphism(q: FiniteQuasigroup, f: Permutation) -> bool:
    """True iff f(x)*f(y) = f(x*y) for every pair."""
    if f.order != q.order:
        raise DomainError(f"permutation of order {f.order} on a quasigroup of order {q.order}")
    return _preserves(q.square, f)


def build_translation_quasigroup(n: int) -> FiniteQuasigroup:
    """x*y = lam*(x+y) mod n with lam = (n+1)/2, for odd n.

    The map x -> x+1 is an automorphism since 2*lam = 1 mod n, and the square
    is idempotent for the same reason.
    """
    if n % 2 == 0:
        raise EvenOrderUnsupported(n)
    _check_order(n)
    lam = (n + 1) // 2
    r = np.arange(n, dtype=np.int64)
    _log.debug("build_translation_quasigroup: n=%d lam=%d", n, lam)
    return FiniteQuasigroup(
        square=LatinSquare.from_array(lam * np.add.outer(r, r) % n),
        is_idempotent=True,
        automorphic_translation=translation(n),
    )


def build_cyclic_group(n: int) -> FiniteQuasigroup:
    """The additive group of integers mod n as a quasigroup."""
    _check_order(n)
    r = np.arange(n, dtype=np.int64)
    return FiniteQuasigroup(square=LatinSquare.from_array(np.add.outer(r, r) % n), is_idempotent=(n == 1))


def _prolong_translation(n: int) -> LatinSquare:
    """Idempotent square of even order n >= 4 grown from the translation square of order m = n-1.

    The cells (i, i+1) of the order-m square carry the distinct entries i + lam,
    so they form a transversal off the diagonal. Each of them takes the new
    symbol m, its old entry moves to the new row and the new column, and the
    corner (m, m) is m.
    """
    m = n - 1
    base = build_translation_quasigroup(m).array
    i = np.arange(m)
    cols = (i + 1) % m
    moved = base[i, cols]
    a = np.full((n, n), m, dtype=np.int64)
    a[:m, :m] = base
    a[i, cols] = m
    a[i, m] = moved
    a[m, cols] = moved
    return LatinSquare.from_array(a)


def build_idempotent_quasigroup(n: int) -> FiniteQuasigroup:
    """An idempotent quasigroup of order n (n != 2).

    Odd orders reuse the translation construction; even orders extend the
    translation square of order n-1 by one row and column.
    """
    _check_order(n)
    if n % 2 == 1:
        return build_translation_quasigroup(n)
    if n == 2:
        from .oracle import search_idempotent

        raise NoIdempotentSquare(n, search_idempotent(n))
    _log.debug("build_idempotent_quasigroup: n=%d by prolongation", n)
    return FiniteQuasigroup(square=_prolong_translation(n), is_idempotent=True)


def default_quasigroup(n: int) -> FiniteQuasigroup:
    """Base operation used when the caller does not supply one.

    Odd n gets the translation quasigroup, even n the idempotent construction,
    and n = 2 (which has no idempotent square) the cyclic group.
    """
    if n == 2:
        return build_cyclic_group(2)
    return build_idempotent_quasigroup(n)


def quasigroup_from_square(square: LatinSquare) -> FiniteQuasigroup:
    """Wrap a parsed square, setting the flags it actually satisfies."""
    s = translation(square.order)
    return FiniteQuasigroup(
        square=square,
        is_idempotent=is_idempotent(square),
        automorphic_translation=s if _preserves(square, s) else None,
    )
