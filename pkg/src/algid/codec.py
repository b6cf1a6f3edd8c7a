"""Canonical digests, legacy imports, reserved and key-derived elements.

Digests are little-endian throughout: the leftmost character is the least
significant digit.  A placeholder '_' carries no value; its position marks
the element class (index 1 for center, index 2 for hybrid, absent for
identity and ordered digests).
"""

from __future__ import annotations

from typing import Final

from .core import ElementClass, UtElement, from_rank, identity
from .errors import (
    InvalidKey,
    NoDigestSupport,
    NonCanonical,
    RankOutOfRange,
    ThetaExhausted,
)
from .params import GroupParams

ALPHABET: Final = "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ-."
PLACEHOLDER: Final = "_"
HEX_ALPHABET: Final = ALPHABET[:16]
BASE62_ALPHABET: Final = ALPHABET[:62]

_DIGIT: Final = {c: i for i, c in enumerate(ALPHABET)}

MAX_THETA: Final = 62
_REMOVAL_DASHES: Final = 20


def _require_digests(params: GroupParams) -> int:
    if params.digest_len is None:
        raise NoDigestSupport(f"{params!r} has no digest length")
    return params.digest_len


def _digits_le(value: int, width: int, base: int) -> str:
    out = []
    for _ in range(width):
        out.append(ALPHABET[value % base])
        value //= base
    if value:
        raise ValueError(f"value does not fit in {width} base-{base} digits")
    return "".join(out)


def _value_le(text: str, base: int) -> int:
    value = 0
    for pos in reversed(range(len(text))):
        digit = _DIGIT.get(text[pos])
        if digit is None or digit >= base:
            raise NonCanonical(f"symbol {text[pos]!r} at index {pos} is not a base-{base} digit")
        value = value * base + digit
    return value


def encode(a: UtElement) -> str:
    """Render the canonical digest of a (official versions only)."""
    length = _require_digests(a.params)
    v = a.rank
    cls = a.classify()
    if cls is ElementClass.IDENTITY:
        return "0" * length
    if cls is ElementClass.CENTER:
        h = _digits_le(v, length // 4, 16)
        body = h[0] + PLACEHOLDER + h[1:] + PLACEHOLDER
        return body + "0" * (length - len(body))
    if cls is ElementClass.HYBRID:
        q = v % 4096
        return ALPHABET[q % 64] + ALPHABET[q // 64] + PLACEHOLDER + _digits_le(v // 4096, length - 3, 16)
    return _digits_le(v, length, 64)


def decode(text: str, params: GroupParams) -> UtElement:
    """Parse a canonical digest back into its element."""
    length = _require_digests(params)
    if len(text) != length:
        raise NonCanonical(f"digest length {len(text)}, expected {length}")
    placeholders = frozenset(i for i, c in enumerate(text) if c == PLACEHOLDER)
    if placeholders == {1, length // 4 + 1}:
        return _decode_center(text, params)
    if placeholders == {2}:
        return _decode_hybrid(text, params)
    if placeholders:
        raise NonCanonical(f"placeholder at unexpected positions {sorted(placeholders)}")
    v = _value_le(text, 64)
    if v == 0:
        return identity(params)
    if not params.p4 <= v < params.p6:
        raise NonCanonical(f"ordered digest value {v} outside [p**4, p**6)")
    return from_rank(v, params)


def _decode_center(text: str, params: GroupParams) -> UtElement:
    quarter = params.digest_len // 4  # type: ignore[operator]
    digits = text[0] + text[2 : quarter + 1]
    v = _value_le(digits, 16)
    pad = text[quarter + 2 :]
    if pad.strip("0"):
        raise NonCanonical("center digest padding must be all '0'")
    if not 1 <= v < params.p:
        raise NonCanonical(f"center digest value {v} outside [1, p)")
    return from_rank(v, params)


def _decode_hybrid(text: str, params: GroupParams) -> UtElement:
    q = _value_le(text[:2], 64)
    w = _value_le(text[3:], 16)
    v = q + 4096 * w
    if not params.p <= v < params.p4:
        raise NonCanonical(f"hybrid digest value {v} outside [p, p**4)")
    return from_rank(v, params)


def import_legacy(text: str, base: int, mode: str, params: GroupParams) -> UtElement:
    """Adopt a pre-existing base-16 or base-62 identifier.

    mode "commuting" folds the value into [0, p**4); mode "ordered" shifts
    it by p**4, which is injective for every official digest length.
    """
    if base not in (16, 62):
        raise ValueError(f"base must be 16 or 62, got {base}")
    if mode not in ("ordered", "commuting"):
        raise ValueError(f"mode must be 'ordered' or 'commuting', got {mode!r}")
    if not text:
        raise NonCanonical("empty import text")
    if params.digest_len is not None and len(text) > params.digest_len:
        raise NonCanonical(f"import text longer than {params.digest_len} characters")
    v = _value_le(text, base)
    if mode == "commuting":
        return from_rank(v % params.p4, params)
    rank = params.p4 + v
    if rank >= params.p6:
        raise RankOutOfRange(f"imported value {v} exceeds the ordered range")
    return from_rank(rank, params)


# ---------------------------------------------------------------------------
# Reserved elements: the root marker, the numbered slot elements consumed
# by multi-output creation, and removal elements.
# ---------------------------------------------------------------------------


def reserved_root(params: GroupParams) -> UtElement:
    """The distinguished ordered element spelled '-'*(L-1) + '0'."""
    if params.digest_len is None:
        return from_rank(params.p4, params)
    return decode("-" * (params.digest_len - 1) + "0", params)


def reserved_slot(params: GroupParams, i: int) -> UtElement:
    """The i-th reserved slot element; only 63 exist (0 <= i <= 62)."""
    if not 0 <= i <= MAX_THETA:
        raise ThetaExhausted(f"slot index {i} outside [0, {MAX_THETA}]")
    if params.digest_len is None:
        return from_rank(params.p4 + 1 + i, params)
    return decode("-" * (params.digest_len - 1) + ALPHABET[i + 1], params)


def removal_token(*, index: int | None = None, name: str | None = None) -> str:
    """Render the token naming a removal target (decimal index or name)."""
    if (index is None) == (name is None):
        raise InvalidKey("exactly one of index and name is required")
    if index is not None:
        if index < 1:
            raise InvalidKey(f"removal index must be >= 1, got {index}")
        return str(index)
    assert name is not None
    if not name.isascii() or not name.isalnum():
        raise InvalidKey(f"removal name must match [a-zA-Z0-9]+, got {name!r}")
    return name


def removal_element(params: GroupParams, *, index: int | None = None, name: str | None = None) -> UtElement:
    """The ordered element marking removal of a slot by index or by name.

    Official versions spell it '-'*20 + '.' padding + token and decode the
    ordered layout; test versions derive a rank above the reserved slots
    from the token's positional value.
    """
    token = removal_token(index=index, name=name)
    if params.digest_len is None:
        span = params.p6 - params.p4 - (MAX_THETA + 2)
        return from_rank(params.p4 + MAX_THETA + 2 + _value_le(token, 64) % span, params)
    length = params.digest_len
    pad = length - _REMOVAL_DASHES - len(token)
    if name is not None and pad < 1:
        raise InvalidKey(f"removal name longer than {length - _REMOVAL_DASHES - 1} characters")
    if pad < 0:
        raise InvalidKey(f"removal token longer than {length - _REMOVAL_DASHES} characters")
    try:
        return decode("-" * _REMOVAL_DASHES + "." * pad + token, params)
    except NonCanonical as exc:
        # A short all-zero-ish token can fall below p**4; refuse it rather
        # than hand back a commuting removal marker.
        raise InvalidKey(f"removal token {token!r} does not reach the ordered range") from exc


def key_element(key: str, params: GroupParams) -> UtElement:
    """Deterministic hybrid element for a map key.

    The key is framed like a hybrid digest (two leading characters, then
    the hex of the remaining UTF-8 bytes), and the frame value is folded
    into [p, p**4) so the result is never central and never the identity.
    """
    if not key or not key.isascii() or not key.isalnum():
        raise InvalidKey(f"key must match [a-zA-Z0-9]+, got {key!r}")
    length = params.digest_len if params.digest_len is not None else 40
    if len(key) > 2 + (length - 3) // 2:
        raise InvalidKey(f"key longer than {2 + (length - 3) // 2} characters")
    head = key[:2] if len(key) >= 2 else key + "-"
    q = _DIGIT[head[0]] + 64 * _DIGIT[head[1]]
    w = _value_le(key[2:].encode("utf-8").hex(), 16)
    v_raw = q + 4096 * w
    return from_rank(params.p + v_raw % (params.p4 - params.p), params)
