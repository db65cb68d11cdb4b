"""Exact combinatorial kernel: multinomials, integer partitions, Bernoulli numbers.

Every value in this package is an arbitrary-precision ``int`` or
``fractions.Fraction``; nothing anywhere touches floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator

__all__ = [
    "Exponents",
    "as_exponents",
    "canonical",
    "multinomial",
    "partitions",
    "bernoulli",
    "format_rational",
    "parse_rational",
]

# An exponent vector (k_1, ..., k_n): one nonnegative psi exponent per marked
# point.  Plain tuples keep these hashable and cheap to permute.
Exponents = tuple[int, ...]


def as_exponents(values: Iterable[int]) -> Exponents:
    """Coerce an iterable of psi exponents to a validated tuple."""
    k = tuple(int(v) for v in values)
    if not k:
        raise ValueError("exponent vector must have at least one entry")
    if any(v < 0 for v in k):
        raise ValueError(f"exponents must be nonnegative, got {k}")
    return k


def canonical(exponents: Iterable[int]) -> Exponents:
    """Sorted-descending form of an exponent vector; the memo key everywhere.

    Symmetric integrals only depend on the multiset of exponents, so sorting
    collapses compositions to partitions.
    """
    return tuple(sorted(exponents, reverse=True))


def multinomial(n: int, parts: Iterable[int]) -> int:
    """Multinomial coefficient n! / (k_1! ... k_m!) for parts summing to n.

    Parts equal to zero are allowed and contribute a factor 0! = 1.
    Raises ValueError when the parts do not sum to ``n``.
    """
    k = as_exponents(parts)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if sum(k) != n:
        raise ValueError(f"parts {k} do not sum to {n}")
    out = math.factorial(n)
    for part in k:
        out //= math.factorial(part)
    return out


def partitions(total: int, max_parts: int) -> Iterator[Exponents]:
    """Yield each partition of ``total`` into at most ``max_parts`` positive parts.

    Every partition is padded with zeros to length ``max_parts`` and emitted
    exactly once, in reverse-lexicographic order:

        partitions(4, 3) -> (4,0,0), (3,1,0), (2,2,0), (2,1,1)

    ``total == 0`` yields the single all-zero vector.
    """
    if total < 0:
        raise ValueError("total must be nonnegative")
    if max_parts < 1:
        raise ValueError("max_parts must be positive")
    for parts in _descending_parts(total, max_parts, total):
        yield parts + (0,) * (max_parts - len(parts))


def _descending_parts(remaining: int, slots: int, bound: int) -> Iterator[Exponents]:
    if remaining == 0:
        yield ()
        return
    if slots == 0:
        return
    for first in range(min(remaining, bound), 0, -1):
        for rest in _descending_parts(remaining - first, slots - 1, first):
            yield (first,) + rest


# Bernoulli numbers, B_1 = -1/2 convention; extended on demand.
_BERNOULLI: list[Fraction] = [Fraction(1)]


def bernoulli(m: int) -> Fraction:
    """The m-th Bernoulli number under the B_1 = -1/2 convention.

    Computed exactly from the recurrence sum_{k=0}^{m} C(m+1, k) B_k = 0
    with B_0 = 1.
    """
    if m < 0:
        raise ValueError("index must be nonnegative")
    while len(_BERNOULLI) <= m:
        j = len(_BERNOULLI)
        acc = sum((math.comb(j + 1, i) * _BERNOULLI[i] for i in range(j)), Fraction(0))
        _BERNOULLI.append(-acc / (j + 1))
    return _BERNOULLI[m]


def format_rational(value: Fraction | int) -> str:
    """Render an exact rational as "p/q", omitting "/q" when q is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse the "p/q" form produced by :func:`format_rational`."""
    return Fraction(text.strip())
