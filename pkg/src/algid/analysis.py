"""Robustness metrics: commuting probability, compatibility gaps, ambiguity
and birthday bounds, candidate-group comparison, and the exhaustive
small-prime census.

Gaps and probabilities are computed with exact integer arithmetic and only
converted to float at the edge; 1 - order/2**beta evaluated naively in
doubles would flush gaps like 4.7e-10 to zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _backend
from .errors import RefusedSize
from .params import GroupParams

MAX_CENSUS_PRIME = 13


def commuting_probability_ut(p: int) -> float:
    """Probability that two uniform elements of the 4x4 group commute."""
    return float(Fraction(2 * p**3 + p**2 - 2 * p, p**6))


def compatibility_gap(order: int, beta: int) -> float:
    """Fraction of the beta-bit space the group does not cover; negative
    when the group is larger than the space."""
    if order < 1:
        raise ValueError("order must be >= 1")
    return float(Fraction(2**beta - order, 2**beta))


def ambiguity_probability(p_c: float, length: int) -> float:
    """Chance that a random expression of the given length is ambiguous."""
    if length < 2:
        raise ValueError("length must be >= 2")
    return min(1.0, p_c * math.comb(length + 1, 3))


def expected_expressions(p_c: float, length: int) -> float:
    """Expressions needed before an ambiguous one appears with odds 1/2.

    Infinite when collisions are impossible; 1 when every expression is
    already ambiguous (degenerate, returned as-is).
    """
    p_m = ambiguity_probability(p_c, length)
    if p_m == 0.0:
        return math.inf
    if p_m >= 1.0:
        return 1.0
    return math.log(0.5) / math.log1p(-p_m)


def pair_collision_probability(bits: int) -> float:
    return 2.0 ** -bits


def birthday_bound(bits: int) -> int:
    """Smallest n whose n-hash collision probability reaches 1/2."""
    if bits < 8:
        raise ValueError("bits must be >= 8")
    space = 1 << (bits + 1)
    guess = (1 + math.isqrt(1 + int(4 * math.log(2) * space))) // 2
    for n in range(max(2, guess - 3), guess + 4):
        if -math.expm1((-n * n + n) / space) >= 0.5:
            return n
    raise AssertionError("quadratic estimate missed the threshold")


# ---------------------------------------------------------------------------
# Candidate group families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupFamilySpec:
    """One candidate group with its exact order.

    min_order is the minimum non-trivial element order when known, and
    beta the bit budget its gap is quoted against.
    """

    label: str
    order: int
    min_order: int | None = None
    beta: int = 192
    ut_prime: int | None = None

    def gap(self) -> float:
        return compatibility_gap(self.order, self.beta)

    def commuting_probability(self) -> float | None:
        if self.ut_prime is None:
            return None
        return commuting_probability_ut(self.ut_prime)


def symmetric_group(n: int) -> GroupFamilySpec:
    return GroupFamilySpec(f"S_{n}", math.factorial(n), min_order=2)


def alternating_group(n: int) -> GroupFamilySpec:
    return GroupFamilySpec(f"A_{n}", math.factorial(n) // 2, min_order=2)


def dihedral_group(order: int, label: str | None = None) -> GroupFamilySpec:
    return GroupFamilySpec(label or f"D_{order}", order, min_order=2)


def general_linear_group(n: int, q: int) -> GroupFamilySpec:
    order = 1
    for i in range(n):
        order *= q**n - q**i
    return GroupFamilySpec(f"GL_{n},{q}", order, min_order=2)


def special_linear_group(n: int, q: int) -> GroupFamilySpec:
    return GroupFamilySpec(f"SL_{n},{q}", general_linear_group(n, q).order // (q - 1), min_order=2)


def wreath_product(factors: Sequence[tuple[int, int]]) -> GroupFamilySpec:
    order = 1
    for k, p in factors:
        order *= p ** ((p**k - 1) // (p - 1))
    label = "x".join(f"W_{k},{p}" for k, p in factors)
    return GroupFamilySpec(label, order, min_order=min(p for _, p in factors))


def unitriangular_group(p: int, label: str | None = None, beta: int = 192) -> GroupFamilySpec:
    return GroupFamilySpec(label or f"UT4({p})", p**6, min_order=p, beta=beta, ut_prime=p)


def candidate_table(beta_default: int = 192) -> list[GroupFamilySpec]:
    """The ten candidate groups compared when choosing the scheme.

    All rows quote their gap at beta_default except the 40-digit version,
    conventionally quoted at its own digest width of 240 bits.
    """
    from dataclasses import replace

    rows = [
        symmetric_group(46),
        alternating_group(46),
        dihedral_group(2**192, "D_2^192"),
        general_linear_group(3, 2642239),
        general_linear_group(4, 4093),
        special_linear_group(3, 16777213),
        special_linear_group(4, 7129),
        wreath_product([(2, 7), (2, 13), (2, 23)]),
        unitriangular_group(2**32 - 5, "ut32.4"),
    ]
    rows = [replace(r, beta=beta_default) for r in rows]
    rows.append(unitriangular_group(2**40 - 87, "ut40.4", beta=240))
    return rows


# ---------------------------------------------------------------------------
# Version report
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RobustnessReport:
    version: str
    p: int
    group_order: int
    beta: int
    commuting_probability: float
    gap: float
    min_order: int
    lengths: tuple[int, ...]
    ambiguity: tuple[float, ...]
    expected: tuple[float, ...]


def robustness_report(
    params: GroupParams, beta: int | None = None, lengths: Sequence[int] = (10**7,)
) -> RobustnessReport:
    """Metrics for one version; beta defaults to the version's own digest
    width in bits (6 per character), where the gap is meaningfully small."""
    if beta is None:
        width = params.digest_len if params.digest_len is not None else params.p.bit_length()
        beta = 6 * width
    p_c = commuting_probability_ut(params.p)
    return RobustnessReport(
        version=params.name,
        p=params.p,
        group_order=params.p6,
        beta=beta,
        commuting_probability=p_c,
        gap=compatibility_gap(params.p6, beta),
        min_order=params.p,
        lengths=tuple(lengths),
        ambiguity=tuple(ambiguity_probability(p_c, l) for l in lengths),
        expected=tuple(expected_expressions(p_c, l) for l in lengths),
    )


# ---------------------------------------------------------------------------
# Exhaustive census
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CensusResult:
    p: int
    group_order: int
    order_histogram: dict[int, int]
    commuting_pairs: int

    def commuting_probability(self) -> float:
        return float(Fraction(self.commuting_pairs, self.group_order**2))


def empirical_census(p: int) -> CensusResult:
    """Enumerate all p**6 elements: order histogram and exact count of
    ordered commuting pairs.  Refuses primes past desk scale."""
    if p > MAX_CENSUS_PRIME:
        raise RefusedSize(f"census of p={p} exceeds p={MAX_CENSUS_PRIME} ({p**6:,} elements)")
    if p < 5 or not _is_small_prime(p):
        raise ValueError(f"census needs a prime with 5 <= p <= {MAX_CENSUS_PRIME}")
    return CensusResult(
        p=p,
        group_order=p**6,
        order_histogram=dict(_backend.census_orders(p)),
        commuting_pairs=int(_backend.census_commuting_pairs(p)),
    )


def _is_small_prime(n: int) -> bool:
    return n > 1 and all(n % d for d in range(2, int(math.isqrt(n)) + 1))
