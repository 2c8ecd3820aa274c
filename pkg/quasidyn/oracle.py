"""Brute-force certifiers, independent of the constructions they check.

- `enumerate_automorphic` walks every table of the shape x*y = a[y-x] + x
  (the general form of an operation for which x -> x+1 is an automorphism)
  and counts the Latin ones.
- `sum_contradiction_report` evaluates the row and column sums that rule out
  even orders.
- `count_latin_squares` and `search_idempotent` are plain backtracking searches.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from typing import List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.typing import NDArray

from .debug import get_logger
from .errors import DomainError, ResourceLimitExceeded
from .quasigroup import LatinSquare, Table, check_latin, to_table

_log = get_logger("oracle")


class AVector(NamedTuple):
    order: int
    entries: Tuple[int, ...]


class AutomorphicCount(NamedTuple):
    n: int
    count: int
    candidates: int
    tables: Tuple[Table, ...]


class SumReport(NamedTuple):
    n: int
    row_sum: int
    col_sum: int
    row_sums_constant: bool
    col_sums_constant: bool

    @property
    def contradiction(self) -> bool:
        # a Latin square has every line summing to n(n-1)/2 mod n
        return self.row_sum != self.col_sum


class NonexistenceCertificate(NamedTuple):
    n: int
    nodes_explored: int
    reason: str
    clash: Optional[Tuple[int, int]] = None


class LemmaRow(NamedTuple):
    n: int
    count: int
    holds: bool


def make_avector(entries: Sequence[int]) -> AVector:
    n = len(entries)
    if n < 1:
        raise DomainError("an a-vector needs at least one entry")
    if any(not 0 <= a < n for a in entries):
        raise DomainError(f"a-vector entries must lie in 0..{n - 1}: {tuple(entries)}")
    return AVector(order=n, entries=tuple(int(a) for a in entries))


def avector_array(a: AVector) -> NDArray[np.int64]:
    """x*y = a[(y - x) mod n] + x mod n, as an n x n array."""
    n = a.order
    e = np.asarray(a.entries, dtype=np.int64)
    x = np.arange(n)[:, None]
    y = np.arange(n)[None, :]
    return (e[(y - x) % n] + x) % n


def table_from_avector(a: AVector) -> Table:
    return to_table(avector_array(a))


def avector_from_table(table: Table) -> AVector:
    """Row 0 of the table reads off the a-vector: 0*y = a[y]."""
    return make_avector(table[0])


def _count_partition(n: int, lead: int, collect: bool) -> Tuple[int, int, List[Table]]:
    rest = [s for s in range(n) if s != lead]
    count = 0
    candidates = 0
    tables: List[Table] = []
    for tail in itertools.permutations(rest):
        candidates += 1
        table = avector_array(AVector(n, (lead,) + tail))
        if check_latin(table) is None:
            count += 1
            if collect:
                tables.append(to_table(table))
    return count, candidates, tables


def enumerate_automorphic(n: int, collect: bool = False, workers: int = 1, limit: int = 8) -> AutomorphicCount:
    """Count Latin tables among all a-vectors of order n.

    Vectors with a repeated entry are skipped: row x of the table is a shifted
    copy of the vector plus x, so a repeat already breaks row 0. The remaining
    n! vectors are split by their leading entry and the parts summed.
    """
    if n < 1:
        raise DomainError(f"order must be positive, got {n}")
    if n > limit:
        raise ResourceLimitExceeded("n", n, limit)
    _log.debug("enumerate_automorphic: n=%d workers=%d", n, workers)
    if workers > 1 and n > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_count_partition, [n] * n, range(n), [collect] * n))
    else:
        parts = [_count_partition(n, lead, collect) for lead in range(n)]
    count = sum(p[0] for p in parts)
    candidates = sum(p[1] for p in parts)
    tables = tuple(sorted(t for p in parts for t in p[2]))
    _log.debug("enumerate_automorphic: n=%d count=%d candidates=%d", n, count, candidates)
    return AutomorphicCount(n=n, count=count, candidates=candidates, tables=tables)


def verify_lemma(max_n: int, workers: int = 1) -> List[LemmaRow]:
    """Check 'some table is Latin iff n is odd' for every n up to max_n."""
    rows = []
    for n in range(1, max_n + 1):
        count = enumerate_automorphic(n, workers=workers).count
        rows.append(LemmaRow(n=n, count=count, holds=(count == 0) == (n % 2 == 0)))
    return rows


def sum_contradiction_report(n: int, a: AVector) -> SumReport:
    if n % 2 != 0:
        raise DomainError(f"the sum argument concerns even orders, got {n}")
    if a.order != n:
        raise DomainError(f"a-vector of order {a.order} for n={n}")
    if len(set(a.entries)) != n:
        raise DomainError(f"a-vector entries must be pairwise distinct: {a.entries}")
    t = avector_array(a)
    row_sums = np.unique(t.sum(axis=1) % n)
    col_sums = np.unique(t.sum(axis=0) % n)
    return SumReport(
        n=n,
        row_sum=int(row_sums[0]),
        col_sum=int(col_sums[0]),
        row_sums_constant=row_sums.size == 1,
        col_sums_constant=col_sums.size == 1,
    )


def count_latin_squares(n: int, limit: int = 5) -> int:
    """Number of n x n Latin squares, by cell-wise backtracking with bitmasks."""
    if n < 1:
        raise DomainError(f"order must be positive, got {n}")
    if n > limit:
        raise ResourceLimitExceeded("n", n, limit)
    full = (1 << n) - 1
    rows = [0] * n
    cols = [0] * n

    def fill(cell: int) -> int:
        if cell == n * n:
            return 1
        r, c = divmod(cell, n)
        free = full & ~(rows[r] | cols[c])
        total = 0
        while free:
            bit = free & -free
            free ^= bit
            rows[r] |= bit
            cols[c] |= bit
            total += fill(cell + 1)
            rows[r] ^= bit
            cols[c] ^= bit
        return total

    result = fill(0)
    _log.debug("count_latin_squares: n=%d count=%d", n, result)
    return result


def count_latin_squares_by_rows(n: int, limit: int = 5) -> int:
    """Second counter: stack whole rows, each a permutation avoiding used column symbols."""
    if n < 1:
        raise DomainError(f"order must be positive, got {n}")
    if n > limit:
        raise ResourceLimitExceeded("n", n, limit)
    perms = list(itertools.permutations(range(n)))

    def extend(used: Tuple[frozenset, ...], depth: int) -> int:
        if depth == n:
            return 1
        total = 0
        for p in perms:
            if all(p[c] not in used[c] for c in range(n)):
                total += extend(tuple(used[c] | {p[c]} for c in range(n)), depth + 1)
        return total

    return extend(tuple(frozenset() for _ in range(n)), 0)


def search_idempotent(n: int, limit: int = 12) -> Union[LatinSquare, NonexistenceCertificate]:
    """First idempotent Latin square of order n, or a certificate that none exists.

    Cells are filled row by row, left to right, skipping the pre-filled
    diagonal; each cell tries the smallest admissible symbol first, so the
    output is reproducible.
    """
    if n < 1:
        raise DomainError(f"order must be positive, got {n}")
    if n > limit:
        raise ResourceLimitExceeded("n", n, limit)
    full = (1 << n) - 1
    grid = [[0] * n for _ in range(n)]
    rows = [0] * n
    cols = [0] * n
    for d in range(n):
        grid[d][d] = d
        rows[d] |= 1 << d
        cols[d] |= 1 << d
    cells = [(r, c) for r in range(n) for c in range(n) if r != c]
    ncells = len(cells)
    # pending[i]: symbols still to try at cell i; placed[i]: the one in place
    pending = [0] * ncells
    placed = [0] * ncells
    if ncells:
        r, c = cells[0]
        pending[0] = full & ~(rows[r] | cols[c])
    nodes = 1
    i = 0
    found = ncells == 0
    while not found and i >= 0:
        r, c = cells[i]
        if placed[i]:
            rows[r] ^= placed[i]
            cols[c] ^= placed[i]
            placed[i] = 0
        if not pending[i]:
            i -= 1
            continue
        bit = pending[i] & -pending[i]
        pending[i] ^= bit
        rows[r] |= bit
        cols[c] |= bit
        placed[i] = bit
        grid[r][c] = bit.bit_length() - 1
        nodes += 1
        i += 1
        if i == ncells:
            found = True
        else:
            r, c = cells[i]
            pending[i] = full & ~(rows[r] | cols[c])
    _log.debug("search_idempotent: n=%d found=%s nodes=%d", n, found, nodes)
    if not found:
        return NonexistenceCertificate(
            n=n,
            nodes_explored=nodes,
            reason="search tree exhausted with the diagonal fixed to the identity",
            clash=first_clash(n),
        )
    return LatinSquare.from_rows(grid)


def first_clash(n: int) -> Optional[Tuple[int, int]]:
    """For n = 2 the cell (0, 1) has no admissible symbol; report such a cell if one exists."""
    for r in range(n):
        for c in range(n):
            if r != c and all(s in (r, c) for s in range(n)):
                return (r, c)
    return None
