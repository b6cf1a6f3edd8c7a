"""Group version parameters: the prime modulus and digest geometry."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Final

_OFFICIAL: Final[dict[str, tuple[int, int]]] = {
    "ut32.4": (2**32 - 5, 32),
    "ut40.4": (2**40 - 87, 40),
    "ut64.4": (2**64 - 59, 64),
}

OFFICIAL_VERSIONS: Final[tuple[str, ...]] = tuple(_OFFICIAL)

DEFAULT_VERSION: Final[str] = "ut40.4"

_TEST_PRIME_LIMIT: Final[int] = 2**16


@dataclass(frozen=True)
class GroupParams:
    """Parameters of one group version.

    digest_len is the canonical digest length in characters, or None for
    test versions, which have no digest support.
    """

    name: str
    p: int
    digest_len: int | None

    @property
    def p4(self) -> int:
        return self.p**4

    @property
    def p6(self) -> int:
        return self.p**6

    @property
    def is_test(self) -> bool:
        return self.digest_len is None

    def __repr__(self) -> str:
        if self.is_test:
            return f"GroupParams(test, p={self.p})"
        return f"GroupParams({self.name})"


@lru_cache(maxsize=None)
def version(name: str) -> GroupParams:
    """Return the official version registered under name."""
    try:
        p, digest_len = _OFFICIAL[name]
    except KeyError:
        raise ValueError(f"unknown version {name!r}; expected one of {OFFICIAL_VERSIONS}") from None
    return GroupParams(name=name, p=p, digest_len=digest_len)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@lru_cache(maxsize=None)
def test_group(p: int) -> GroupParams:
    """Return a digest-less test version over a small prime p.

    Any prime with 5 <= p < 2**16 is accepted; such versions support the
    full algebra but refuse digest encoding.
    """
    if not 5 <= p < _TEST_PRIME_LIMIT:
        raise ValueError(f"test prime must satisfy 5 <= p < 2**16, got {p}")
    if not _is_prime(p):
        raise ValueError(f"test modulus must be prime, got {p}")
    return GroupParams(name="test", p=p, digest_len=None)
