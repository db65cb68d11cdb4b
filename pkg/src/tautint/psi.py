"""psi-class intersection numbers in genus 0 and 1.

The integrals <psi_1^{k_1} ... psi_n^{k_n}> over the moduli space of stable
n-pointed curves are computed by memoized string/dilaton recursion from the
two base values <1>_{0,3} = 1 and <psi_1>_{1,1} = 1/24.  A closed-form
multinomial evaluation in genus 0 is kept as an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .arith import Exponents, as_exponents, canonical, multinomial

__all__ = [
    "ModuliIndex",
    "UnsupportedGenusError",
    "psi_integral",
    "genus0_closed_form",
    "clear_cache",
]


class UnsupportedGenusError(ValueError):
    """Raised for a genus beyond the exactly-solvable range of this engine."""


@dataclass(frozen=True)
class ModuliIndex:
    """A moduli space of stable curves: genus and number of marked points."""

    genus: int
    marks: int

    @property
    def dimension(self) -> int:
        return 3 * self.genus - 3 + self.marks

    @property
    def is_stable(self) -> bool:
        return 2 * self.genus - 2 + self.marks > 0


# Memo keyed on (genus, descending-sorted exponents).  A plain dict is enough
# for concurrent use in CPython: reads and writes of immutable values are
# atomic, and racing threads can only ever insert the identical Fraction.
_CACHE: dict[tuple[int, Exponents], Fraction] = {}


def clear_cache() -> None:
    """Drop all memoized integrals (mainly for tests and benchmarks)."""
    _CACHE.clear()


def psi_integral(space: ModuliIndex, exponents: Iterable[int]) -> Fraction:
    """The intersection number <psi_1^{k_1} ... psi_n^{k_n}> on ``space``.

    Returns exactly 0 whenever the monomial degree differs from the space's
    dimension 3g-3+n; a degree mismatch is a value, not an error, so stratum
    evaluators can silently discard non-contributing terms.

    Raises ValueError for an unstable index or a wrong-length exponent
    vector, and UnsupportedGenusError for genus >= 2.
    """
    k = as_exponents(exponents)
    if not space.is_stable:
        raise ValueError(f"unstable moduli index (genus={space.genus}, marks={space.marks})")
    if space.genus not in (0, 1):
        raise UnsupportedGenusError(
            f"genus {space.genus} is outside this engine's exact range (0 or 1)"
        )
    if len(k) != space.marks:
        raise ValueError(f"expected {space.marks} exponents, got {len(k)}")
    if sum(k) != space.dimension:
        return Fraction(0)
    return _psi(space.genus, canonical(k))


def _psi(genus: int, k: Exponents) -> Fraction:
    # Invariants: k sorted descending, degree(k) == 3g-3+len(k), index stable.
    key = (genus, k)
    cached = _CACHE.get(key)
    if cached is not None:
        return cached

    n = len(k)
    if genus == 0 and n == 3:
        value = Fraction(1)
    elif genus == 1 and n == 1:
        value = Fraction(1, 24)
    elif k[-1] == 0:
        # String equation: forget a point with exponent 0 and redistribute
        # one unit of exponent among the remaining points.
        rest = k[:-1]
        value = Fraction(0)
        for j in range(n - 1):
            if rest[j] > 0:
                value += _psi(genus, canonical(rest[:j] + (rest[j] - 1,) + rest[j + 1:]))
    else:
        # No zero part forces genus 1 with all exponents equal to 1 (any part
        # >= 2 would overshoot the dimension), so the dilaton equation
        # applies: the factor is 2g-2+n counted after forgetting the point.
        value = (2 * genus - 2 + (n - 1)) * _psi(genus, k[:-1])

    _CACHE[key] = value
    return value


def genus0_closed_form(exponents: Iterable[int]) -> Fraction:
    """Genus-0 integral as a single multinomial coefficient.

    For n marked points the value is multinomial(n-3, K) when the exponents
    sum to n-3 and 0 otherwise.  Independent of the recursion in
    :func:`psi_integral`; the two are cross-checked in the test suite.
    """
    k = as_exponents(exponents)
    n = len(k)
    if n < 3:
        raise ValueError("genus-0 moduli spaces need at least three marked points")
    if sum(k) != n - 3:
        return Fraction(0)
    return Fraction(multinomial(n - 3, k))
