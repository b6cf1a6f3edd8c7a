"""Deterministic element generation from byte content.

Content is hashed with BLAKE3, truncated to just under six coordinate
widths of bits, and folded into the commuting range (values) or nudged
into the ordered range (functions).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _backend
from .core import UtElement, from_rank
from .params import GroupParams


@dataclass(frozen=True)
class ContentHash:
    """Truncated little-endian hash of one content byte string."""

    data: bytes
    value: int


def content_hash(content: bytes, params: GroupParams) -> ContentHash:
    bits = 6 * params.p.bit_length() - 1
    nbytes = (bits + 7) // 8
    digest = _backend.blake3_digest(content, nbytes)
    return ContentHash(digest, int.from_bytes(digest, "little") % (1 << bits))


def _value_from_hash(value: int, params: GroupParams) -> UtElement:
    return from_rank(value % params.p4, params)


def _function_from_hash(value: int, params: GroupParams) -> UtElement:
    # Official hash widths stay below p**6, but test primes need the fold.
    value %= params.p6
    if value < params.p4:
        value += params.p4
    return from_rank(value, params)


def value_element(content: bytes, params: GroupParams) -> UtElement:
    """Original value identifier for content; always commuting."""
    return _value_from_hash(content_hash(content, params).value, params)


def function_element(content: bytes, params: GroupParams) -> UtElement:
    """Function identifier for a canonical description; always ordered."""
    return _function_from_hash(content_hash(content, params).value, params)
