"""Pure Python kernel: group multiply/invert, BLAKE3, small-prime censuses.

Coordinates travel as 6-tuples in the fixed order
(e12, e13, e14, e23, e24, e34), each reduced mod p.  The compiled kernel
in _ckernel.pyx mirrors this module function for function; _backend picks
whichever is available.
"""

from __future__ import annotations

import struct
from typing import Final, Iterable

COMPILED: Final[bool] = False

Coords = tuple[int, int, int, int, int, int]


def mul6(a: Coords, b: Coords, p: int) -> Coords:
    """Multiply two upper unitriangular 4x4 matrices given by their strict
    upper entries."""
    a12, a13, a14, a23, a24, a34 = a
    b12, b13, b14, b23, b24, b34 = b
    return (
        (a12 + b12) % p,
        (a13 + b13 + a12 * b23) % p,
        (a14 + b14 + a12 * b24 + a13 * b34) % p,
        (a23 + b23) % p,
        (a24 + b24 + a23 * b34) % p,
        (a34 + b34) % p,
    )


def inv6(a: Coords, p: int) -> Coords:
    """Invert via the closed form; mul6(a, inv6(a, p), p) is the identity."""
    a12, a13, a14, a23, a24, a34 = a
    return (
        -a12 % p,
        (a12 * a23 - a13) % p,
        (-a14 + a12 * a24 + a13 * a34 - a12 * a23 * a34) % p,
        -a23 % p,
        (a23 * a34 - a24) % p,
        -a34 % p,
    )


# ---------------------------------------------------------------------------
# BLAKE3 (single shot, extendable output).  Implemented here because no
# binding is available on the package index; verified against vectors
# produced by the reference Rust crate (tests/data/blake3_vectors.json).
# ---------------------------------------------------------------------------

_IV: Final = (
    0x6A09E667, 0xBB67AE85, 0x3C6EF372, 0xA54FF53A,
    0x510E527F, 0x9B05688C, 0x1F83D9AB, 0x5BE0CD19,
)
_MSG_PERMUTATION: Final = (2, 6, 3, 10, 7, 0, 4, 13, 1, 11, 12, 5, 9, 14, 15, 8)

_CHUNK_START: Final = 1 << 0
_CHUNK_END: Final = 1 << 1
_PARENT: Final = 1 << 2
_ROOT: Final = 1 << 3

_BLOCK_LEN: Final = 64
_CHUNK_LEN: Final = 1024
_MASK32: Final = 0xFFFFFFFF


def _compress(
    cv: tuple[int, ...],
    block_words: tuple[int, ...],
    counter: int,
    block_len: int,
    flags: int,
) -> list[int]:
    s = [
        cv[0], cv[1], cv[2], cv[3], cv[4], cv[5], cv[6], cv[7],
        _IV[0], _IV[1], _IV[2], _IV[3],
        counter & _MASK32, (counter >> 32) & _MASK32, block_len, flags,
    ]
    m = list(block_words)
    for rnd in range(7):
        for (ia, ib, ic, id_), (mx, my) in zip(_G_INDEX, _G_MSG):
            a, b, c, d = s[ia], s[ib], s[ic], s[id_]
            a = (a + b + m[mx]) & _MASK32
            d ^= a
            d = ((d >> 16) | (d << 16)) & _MASK32
            c = (c + d) & _MASK32
            b ^= c
            b = ((b >> 12) | (b << 20)) & _MASK32
            a = (a + b + m[my]) & _MASK32
            d ^= a
            d = ((d >> 8) | (d << 24)) & _MASK32
            c = (c + d) & _MASK32
            b ^= c
            b = ((b >> 7) | (b << 25)) & _MASK32
            s[ia], s[ib], s[ic], s[id_] = a, b, c, d
        if rnd < 6:
            m = [m[i] for i in _MSG_PERMUTATION]
    return [
        s[0] ^ s[8], s[1] ^ s[9], s[2] ^ s[10], s[3] ^ s[11],
        s[4] ^ s[12], s[5] ^ s[13], s[6] ^ s[14], s[7] ^ s[15],
        s[8] ^ cv[0], s[9] ^ cv[1], s[10] ^ cv[2], s[11] ^ cv[3],
        s[12] ^ cv[4], s[13] ^ cv[5], s[14] ^ cv[6], s[15] ^ cv[7],
    ]


# Column mixes then diagonal mixes, with the message word pair each g two
# consumes; fixed for all rounds because m is permuted between rounds.
_G_INDEX: Final = (
    (0, 4, 8, 12), (1, 5, 9, 13), (2, 6, 10, 14), (3, 7, 11, 15),
    (0, 5, 10, 15), (1, 6, 11, 12), (2, 7, 8, 13), (3, 4, 9, 14),
)
_G_MSG: Final = ((0, 1), (2, 3), (4, 5), (6, 7), (8, 9), (10, 11), (12, 13), (14, 15))


def _block_words(block: bytes) -> tuple[int, ...]:
    if len(block) < _BLOCK_LEN:
        block = block + b"\x00" * (_BLOCK_LEN - len(block))
    return struct.unpack("<16I", block)


class _Output:
    """Pending compression whose result may become a chaining value or, at
    the root, an extendable output stream."""

    __slots__ = ("cv", "block_words", "counter", "block_len", "flags")

    def __init__(self, cv, block_words, counter, block_len, flags):
        self.cv = cv
        self.block_words = block_words
        self.counter = counter
        self.block_len = block_len
        self.flags = flags

    def chaining_value(self) -> tuple[int, ...]:
        return tuple(_compress(self.cv, self.block_words, self.counter, self.block_len, self.flags)[:8])


def _chunk_output(chunk: bytes, counter: int) -> _Output:
    blocks = [chunk[i : i + _BLOCK_LEN] for i in range(0, len(chunk), _BLOCK_LEN)] or [b""]
    cv = _IV
    for i, blk in enumerate(blocks[:-1]):
        flags = _CHUNK_START if i == 0 else 0
        cv = tuple(_compress(cv, _block_words(blk), counter, _BLOCK_LEN, flags)[:8])
    flags = (_CHUNK_START if len(blocks) == 1 else 0) | _CHUNK_END
    return _Output(cv, _block_words(blocks[-1]), counter, len(blocks[-1]), flags)


def _parent_output(left: tuple[int, ...], right: tuple[int, ...]) -> _Output:
    return _Output(_IV, left + right, 0, _BLOCK_LEN, _PARENT)


def blake3_digest(data: bytes, length: int = 32) -> bytes:
    """Hash data and return the first length bytes of the output stream."""
    n_chunks = max(1, (len(data) + _CHUNK_LEN - 1) // _CHUNK_LEN)
    stack: list[tuple[int, ...]] = []
    for idx in range(n_chunks - 1):
        cv = _chunk_output(data[idx * _CHUNK_LEN : (idx + 1) * _CHUNK_LEN], idx).chaining_value()
        total = idx + 1
        while total & 1 == 0:
            cv = _parent_output(stack.pop(), cv).chaining_value()
            total >>= 1
        stack.append(cv)
    out = _chunk_output(data[(n_chunks - 1) * _CHUNK_LEN :], n_chunks - 1)
    for left in reversed(stack):
        out = _parent_output(left, out.chaining_value())
    pieces = []
    produced = 0
    block_counter = 0
    while produced < length:
        words = _compress(out.cv, out.block_words, block_counter, out.block_len, out.flags | _ROOT)
        pieces.append(struct.pack("<16I", *words))
        produced += _BLOCK_LEN
        block_counter += 1
    return b"".join(pieces)[:length]


# ---------------------------------------------------------------------------
# Exhaustive small-prime censuses, vectorised with numpy.  Callers guard
# the size of p; these assume p**6 coordinate arrays fit in memory.
# ---------------------------------------------------------------------------


def _coordinate_grids(p: int, cells: int):
    import numpy as np

    ranks = np.arange(p**cells, dtype=np.int64)
    return [ranks // p**i % p for i in range(cells)]


def census_orders(p: int) -> dict[int, int]:
    """Histogram of element orders over the whole group."""
    import numpy as np

    # Grid digit order matches the rank map: e14, e13, e23, e24, e12, e34.
    e14, e13, e23, e24, e12, e34 = _coordinate_grids(p, 6)
    a = (e12, e13, e14, e23, e24, e34)
    cur = a
    orders = np.zeros(p**6, dtype=np.int64)
    for k in range(1, p * p + 1):
        is_id = (
            (cur[0] == 0) & (cur[1] == 0) & (cur[2] == 0)
            & (cur[3] == 0) & (cur[4] == 0) & (cur[5] == 0)
        )
        fresh = is_id & (orders == 0)
        orders[fresh] = k
        if orders.all():
            break
        cur = _mul_grids(cur, a, p)
    else:
        raise RuntimeError("order search exceeded p**2 steps")
    values, counts = np.unique(orders, return_counts=True)
    return {int(v): int(c) for v, c in zip(values, counts)}


def _mul_grids(a, b, p: int):
    a12, a13, a14, a23, a24, a34 = a
    b12, b13, b14, b23, b24, b34 = b
    return (
        (a12 + b12) % p,
        (a13 + b13 + a12 * b23) % p,
        (a14 + b14 + a12 * b24 + a13 * b34) % p,
        (a23 + b23) % p,
        (a24 + b24 + a23 * b34) % p,
        (a34 + b34) % p,
    )


def census_commuting_pairs(p: int) -> int:
    """Count ordered pairs (a, b) with ab == ba by direct comparison.

    The 14 entry of either product is a14 + b14 plus cross terms that do
    not involve a14 or b14, so both e14 coordinates are irrelevant; the
    count over the remaining 5 coordinates is scaled by p**2 at the end.
    """
    import numpy as np

    e13, e23, e24, e12, e34 = _coordinate_grids(p, 5)
    b = (e12, e13, e23, e24, e34)
    total = 0
    for a12 in range(p):
        for a13 in range(p):
            for a23 in range(p):
                for a24 in range(p):
                    for a34 in range(p):
                        ab13 = (a13 + b[1] + a12 * b[2]) % p
                        ba13 = (b[1] + a13 + b[0] * a23) % p
                        ab24 = (a24 + b[3] + a23 * b[4]) % p
                        ba24 = (b[3] + a24 + b[2] * a34) % p
                        ab14 = (a12 * b[3] + a13 * b[4]) % p
                        ba14 = (b[0] * a24 + b[1] * a34) % p
                        # 12, 23, 34 entries are plain sums, equal both ways.
                        total += int(
                            ((ab13 == ba13) & (ab24 == ba24) & (ab14 == ba14)).sum()
                        )
    return total * p * p
