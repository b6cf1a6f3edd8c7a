"""Elements of the 4x4 unitriangular group over F_p and their arithmetic.

An element is the strict upper triangle (e12, e13, e14, e23, e24, e34) of
a 4x4 matrix with unit diagonal; the group operation is matrix product
mod p.  Ranks order the group so that the rank intervals
[0], [1, p), [p, p**4), [p**4, p**6) are exactly the identity, the
center, the maximal commuting class, and the ordered class.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from . import _backend
from .errors import RankOutOfRange, VersionMismatch
from .params import GroupParams

__all__ = [
    "ElementClass",
    "UtElement",
    "identity",
    "from_rank",
    "from_coords",
    "random_element",
    "product",
]


class ElementClass(Enum):
    IDENTITY = "identity"
    CENTER = "center"
    HYBRID = "hybrid"
    ORDERED = "ordered"


@dataclass(frozen=True)
class UtElement:
    e12: int
    e13: int
    e14: int
    e23: int
    e24: int
    e34: int
    params: GroupParams

    def __post_init__(self) -> None:
        p = self.params.p
        for cell in self.coords():
            if not 0 <= cell < p:
                raise ValueError(f"coordinate {cell} outside [0, {p})")

    def coords(self) -> tuple[int, int, int, int, int, int]:
        return (self.e12, self.e13, self.e14, self.e23, self.e24, self.e34)

    # -- group operations ---------------------------------------------------

    def __mul__(self, other: UtElement) -> UtElement:
        if self.params != other.params:
            raise VersionMismatch(f"{self.params!r} vs {other.params!r}")
        return from_coords(_backend.mul6(self.coords(), other.coords(), self.params.p), self.params)

    def inverse(self) -> UtElement:
        return from_coords(_backend.inv6(self.coords(), self.params.p), self.params)

    def __pow__(self, n: int) -> UtElement:
        if n < 0:
            raise ValueError("exponent must be non-negative")
        result = identity(self.params)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate_by(self, g: UtElement) -> UtElement:
        """g * self * g**-1."""
        return g * self * g.inverse()

    def commutes_with(self, other: UtElement) -> bool:
        return self * other == other * self

    def order(self) -> int:
        """1 for the identity, p otherwise (every element has prime order)."""
        return 1 if self.is_identity() else self.params.p

    # -- rank and classification --------------------------------------------

    @property
    def rank(self) -> int:
        p = self.params.p
        return (
            self.e14
            + self.e13 * p
            + self.e23 * p**2
            + self.e24 * p**3
            + self.e12 * p**4
            + self.e34 * p**5
        )

    def is_identity(self) -> bool:
        return not any(self.coords())

    def classify(self) -> ElementClass:
        if self.is_identity():
            return ElementClass.IDENTITY
        if self.e12 or self.e34:
            return ElementClass.ORDERED
        if self.e13 or self.e23 or self.e24:
            return ElementClass.HYBRID
        return ElementClass.CENTER

    def is_commuting(self) -> bool:
        """True when the element lies in the maximal commuting class
        (identity, center, or hybrid; rank below p**4)."""
        return not (self.e12 or self.e34)

    # -- lift ----------------------------------------------------------------

    def lift(self) -> UtElement:
        """Swap the 12 and 23 cells; involutive, sends hybrid elements into
        the non-commuting plane used for map entries."""
        return UtElement(self.e23, self.e13, self.e14, self.e12, self.e24, self.e34, self.params)

    def unlift(self) -> UtElement:
        return self.lift()

    def __repr__(self) -> str:
        return f"UtElement(rank={self.rank}, {self.params!r})"


def identity(params: GroupParams) -> UtElement:
    return UtElement(0, 0, 0, 0, 0, 0, params)


def from_coords(coords: Iterable[int], params: GroupParams) -> UtElement:
    e12, e13, e14, e23, e24, e34 = coords
    return UtElement(e12, e13, e14, e23, e24, e34, params)


def from_rank(rank: int, params: GroupParams) -> UtElement:
    """Inverse of the rank map; raises RankOutOfRange outside [0, p**6)."""
    if not 0 <= rank < params.p6:
        raise RankOutOfRange(f"rank {rank} outside [0, {params.p6})")
    p = params.p
    e14 = rank % p
    e13 = rank // p % p
    e23 = rank // p**2 % p
    e24 = rank // p**3 % p
    e12 = rank // p**4 % p
    e34 = rank // p**5 % p
    return UtElement(e12, e13, e14, e23, e24, e34, params)


def random_element(params: GroupParams, rng: random.Random) -> UtElement:
    return from_rank(rng.randrange(params.p6), params)


def product(elements: Iterable[UtElement], params: GroupParams) -> UtElement:
    """Left-to-right product; the identity for an empty iterable."""
    acc = identity(params)
    for e in elements:
        acc = acc * e
    return acc
