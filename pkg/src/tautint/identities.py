"""Closed forms and recursions for genus-2 stratum-pullback integrals, and the
multi-route verifier that cross-checks them.

For a partition k_1 + ... + k_n = n+1 three routes compute the integral of
psi_1^{k_1} ... psi_n^{k_n} against the pullback of the delta stratum (a
genus-1 component meeting a nodal rational component): a one-line multinomial
closed form, a string/dilaton-style recursion, and the brute-force
stratum sum from :mod:`tautint.strata`.  Four more routes compute the same
monomial paired with the top Chern class of the genus-2 Hodge bundle, whose
boundary-strata decomposition reduces everything to the same ingredients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Iterator

from .arith import Exponents, as_exponents, bernoulli, canonical, multinomial, partitions
from .strata import (
    StrataExpression,
    delta0_graph,
    delta_graph,
    expression_integral,
    gamma_psi_graph,
    pullback_integral,
)

__all__ = [
    "pullback_delta_closed",
    "pullback_delta_recursive",
    "lambda2_closed",
    "lambda2_integral",
    "lambda2_expression",
    "lambda_g_initial",
    "lambda_g_prediction",
    "VerificationReport",
    "verify",
    "DELTA_METHODS",
    "LAMBDA2_METHODS",
    "VERIFY_METHODS",
]

LAMBDA2_METHOD_NAMES = ("eq5", "eq3")

DELTA_METHODS = ("delta_closed", "delta_recursive", "delta_brute")
LAMBDA2_METHODS = ("lambda2_closed", "lambda2_eq5", "lambda2_eq3", "lambda_g_pred")
VERIFY_METHODS = DELTA_METHODS + LAMBDA2_METHODS


def _check_partition(n: int, exponents: Iterable[int]) -> Exponents:
    k = as_exponents(exponents)
    if n < 1:
        raise ValueError("n must be a positive integer")
    if len(k) != n:
        raise ValueError(f"expected {n} exponents, got {len(k)}")
    if sum(k) != n + 1:
        raise ValueError(f"exponents {k} must sum to n+1 = {n + 1}")
    return k


def pullback_delta_closed(n: int, exponents: Iterable[int]) -> Fraction:
    """Closed form: 1/24 times the multinomial coefficient of the partition."""
    k = _check_partition(n, exponents)
    return Fraction(multinomial(n + 1, k), 24)


_DELTA_MEMO: dict[Exponents, Fraction] = {}


def pullback_delta_recursive(n: int, exponents: Iterable[int]) -> Fraction:
    """The same integral by induction on n.

    A zero exponent is removed by the pullback analogue of the string
    equation (sum over single decrements of the remaining exponents); with no
    zero some exponent must be 1 and the pullback analogue of the dilaton
    equation applies, contributing a factor n+1.  The base case is the
    one-point integral with exponent 2, which evaluates to 1/24.
    """
    k = _check_partition(n, exponents)
    return _delta_rec(canonical(k))


def _delta_rec(k: Exponents) -> Fraction:
    # k sorted descending, sum(k) == len(k) + 1
    if k == (2,):
        return Fraction(1, 24)
    cached = _DELTA_MEMO.get(k)
    if cached is not None:
        return cached

    n = len(k)
    if k[-1] == 0:
        # String analogue: drop one zero, sum over decrements of the rest.
        rest = k[:-1]
        value = Fraction(0)
        for j in range(n - 1):
            if rest[j] > 0:
                value += _delta_rec(canonical(rest[:j] + (rest[j] - 1,) + rest[j + 1:]))
    else:
        # All parts positive and summing to n+1 forces min(k) == 1 for n >= 2.
        # Dilaton analogue: remove the last exponent-1 point, factor n+1.
        value = (n + 1) * _delta_rec(k[:-1])

    _DELTA_MEMO[k] = value
    return value


def lambda2_closed(n: int, exponents: Iterable[int]) -> Fraction:
    """Closed form 7/5760 times the multinomial coefficient (7/5760 = 7/(24*8*30))."""
    k = _check_partition(n, exponents)
    return Fraction(7 * multinomial(n + 1, k), 5760)


def lambda2_expression(method: str) -> StrataExpression:
    """The boundary-strata decomposition of the genus-2 top Hodge class.

    Two equivalent forms are exposed: ``eq3`` keeps the
    psi-decorated loop graph, ``eq5`` is the fully reduced two-graph
    combination.  Both integrate to the same values; the verifier checks it.
    """
    if method == "eq3":
        return StrataExpression((
            (Fraction(1, 240), gamma_psi_graph()),
            (Fraction(1, 1152), delta0_graph()),
        ))
    if method == "eq5":
        return StrataExpression((
            (Fraction(1, 1152) + Fraction(1, 5760), delta0_graph()),
            (Fraction(1, 240), delta_graph()),
        ))
    raise ValueError(f"unknown method {method!r}; choices: {', '.join(LAMBDA2_METHOD_NAMES)}")


def lambda2_integral(n: int, exponents: Iterable[int], method: str = "eq5") -> Fraction:
    """Integrate the psi monomial against the strata form of the Hodge class."""
    k = _check_partition(n, exponents)
    return expression_integral(lambda2_expression(method), k)


def lambda_g_initial(g: int) -> Fraction:
    """The one-point Hodge integral ((2^{2g-1}-1)/2^{2g-1}) |B_{2g}| / (2g)!."""
    if g < 1:
        raise ValueError("genus must be positive")
    half = 2 ** (2 * g - 1)
    return Fraction(half - 1, half) * abs(bernoulli(2 * g)) / factorial(2 * g)


def lambda_g_prediction(g: int, n: int, exponents: Iterable[int]) -> Fraction:
    """Predicted value of the psi monomial paired with the top Hodge class:
    a multinomial coefficient times :func:`lambda_g_initial`.

    Verifiable against independent routes only at g = 2 here; other genera
    are formula-only.
    """
    if g < 1:
        raise ValueError("genus must be positive")
    k = as_exponents(exponents)
    if len(k) != n:
        raise ValueError(f"expected {n} exponents, got {len(k)}")
    degree = 2 * g - 3 + n
    if sum(k) != degree:
        raise ValueError(f"exponents {k} must sum to 2g-3+n = {degree}")
    return multinomial(degree, k) * lambda_g_initial(g)


@dataclass(frozen=True)
class VerificationReport:
    """All route values for one (n, partition) input.

    ``agreed`` means every route within each method group returned the same
    value (the delta-stratum routes form one group, the Hodge-class routes
    the other; values across groups differ by the constant factor 7/240).
    """

    n: int
    partition: Exponents
    values: dict[str, Fraction]
    agreed: bool


def verify(n_max: int) -> Iterator[VerificationReport]:
    """Cross-check every route for all partitions of n+1 into at most n parts,
    n = 1..n_max, in deterministic order (n ascending, partitions
    reverse-lexicographic, zero-padded to length n)."""
    if n_max < 1:
        raise ValueError("n_max must be a positive integer")
    for n in range(1, n_max + 1):
        for k in partitions(n + 1, n):
            values = {
                "delta_closed": pullback_delta_closed(n, k),
                "delta_recursive": pullback_delta_recursive(n, k),
                "delta_brute": pullback_integral(delta_graph(), k),
                "lambda2_closed": lambda2_closed(n, k),
                "lambda2_eq5": lambda2_integral(n, k, "eq5"),
                "lambda2_eq3": lambda2_integral(n, k, "eq3"),
                "lambda_g_pred": lambda_g_prediction(2, n, k),
            }
            agreed = (
                len({values[m] for m in DELTA_METHODS}) == 1
                and len({values[m] for m in LAMBDA2_METHODS}) == 1
            )
            yield VerificationReport(n=n, partition=k, values=values, agreed=agreed)
