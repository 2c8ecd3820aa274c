from __future__ import annotations

from typing import Any, Optional


class QuasidynError(Exception):
    """Root of every error raised by the package."""


class DomainError(QuasidynError, ValueError):
    """Input outside the domain of an operation (range, arity, order mismatch)."""


class LatinViolation(DomainError):
    """A table whose row or column is not a permutation of the symbols."""

    def __init__(self, axis: str, index: int, message: Optional[str] = None) -> None:
        self.axis = axis
        self.index = index
        super().__init__(message or f"{axis} {index} is not a permutation of the symbols")


class EvenOrderUnsupported(DomainError):
    def __init__(self, n: int) -> None:
        self.n = n
        super().__init__(
            f"no quasigroup of order {n} has x -> x+1 as an automorphism; "
            f"see 'quasidyn oracle automorphic {n}' and 'quasidyn oracle sums {n}'"
        )


class NoIdempotentSquare(QuasidynError):
    def __init__(self, n: int, certificate: Any) -> None:
        self.n = n
        self.certificate = certificate
        super().__init__(f"no idempotent Latin square of order {n} exists (search exhausted)")


class ResourceLimitExceeded(QuasidynError):
    def __init__(self, what: str, value: int, limit: int) -> None:
        self.what = what
        self.value = value
        self.limit = limit
        super().__init__(f"{what}={value} exceeds the limit {limit}")


class NullSetPoint(DomainError):
    """A rational of the form i/M^k, outside the domain of the digit conjugacy."""

    def __init__(self, k: int, i: int, base: int) -> None:
        self.k = k
        self.i = i
        self.base = base
        super().__init__(f"{i}/{base}^{k} has a terminating base-{base} expansion")


class ProductInNullSet(QuasidynError):
    """The weak product of two points is undefined (its digits terminate)."""

    def __init__(self, left: Any, right: Any) -> None:
        self.left = left
        self.right = right
        super().__init__("product falls in the excluded null set")
