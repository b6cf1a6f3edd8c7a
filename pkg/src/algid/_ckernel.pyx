# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel: group multiply/invert, BLAKE3, small-prime censuses.

Mirrors _purekernel function for function.  Coordinate tuples use the
fixed order (e12, e13, e14, e23, e24, e34).  Entries must fit in 64 bits,
which covers every supported modulus; cross products go through 128-bit
intermediates and are reduced before any sum so nothing overflows even at
p = 2**64 - 59.
"""

from libc.stdint cimport uint32_t, uint64_t
from libc.stdlib cimport calloc, free
from libc.string cimport memcpy, memset

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"

COMPILED = True


def mul6(a, b, p):
    """Multiply two upper unitriangular 4x4 matrices given by their strict
    upper entries."""
    cdef uint64_t a12 = a[0], a13 = a[1], a14 = a[2], a23 = a[3], a24 = a[4], a34 = a[5]
    cdef uint64_t b12 = b[0], b13 = b[1], b14 = b[2], b23 = b[3], b24 = b[4], b34 = b[5]
    cdef uint64_t m = p
    cdef uint64_t t13 = <uint64_t> ((<u128> a12 * b23) % m)
    cdef uint64_t t14a = <uint64_t> ((<u128> a12 * b24) % m)
    cdef uint64_t t14b = <uint64_t> ((<u128> a13 * b34) % m)
    cdef uint64_t t24 = <uint64_t> ((<u128> a23 * b34) % m)
    return (
        <uint64_t> ((<u128> a12 + b12) % m),
        <uint64_t> ((<u128> a13 + b13 + t13) % m),
        <uint64_t> ((<u128> a14 + b14 + t14a + t14b) % m),
        <uint64_t> ((<u128> a23 + b23) % m),
        <uint64_t> ((<u128> a24 + b24 + t24) % m),
        <uint64_t> ((<u128> a34 + b34) % m),
    )


def inv6(a, p):
    """Invert via the closed form; mul6(a, inv6(a, p), p) is the identity."""
    cdef uint64_t a12 = a[0], a13 = a[1], a14 = a[2], a23 = a[3], a24 = a[4], a34 = a[5]
    cdef uint64_t m = p
    cdef uint64_t t1223 = <uint64_t> ((<u128> a12 * a23) % m)
    cdef uint64_t t1224 = <uint64_t> ((<u128> a12 * a24) % m)
    cdef uint64_t t1334 = <uint64_t> ((<u128> a13 * a34) % m)
    cdef uint64_t t122334 = <uint64_t> ((<u128> t1223 * a34) % m)
    return (
        (m - a12) % m,
        <uint64_t> ((<u128> t1223 + m - a13) % m),
        <uint64_t> ((<u128> t1224 + t1334 + 2 * <u128> m - a14 - t122334) % m),
        (m - a23) % m,
        <uint64_t> ((<u128> ((<u128> a23 * a34) % m) + m - a24) % m),
        (m - a34) % m,
    )


# ---------------------------------------------------------------------------
# BLAKE3 (single shot, extendable output), C port of the pure version.
# ---------------------------------------------------------------------------

cdef uint32_t IV[8]
IV[:] = [
    0x6A09E667, 0xBB67AE85, 0x3C6EF372, 0xA54FF53A,
    0x510E527F, 0x9B05688C, 0x1F83D9AB, 0x5BE0CD19,
]
cdef int PERM[16]
PERM[:] = [2, 6, 3, 10, 7, 0, 4, 13, 1, 11, 12, 5, 9, 14, 15, 8]

DEF CHUNK_START = 1
DEF CHUNK_END = 2
DEF PARENT = 4
DEF ROOT = 8
DEF BLOCK_LEN = 64
DEF CHUNK_LEN = 1024


cdef struct Pending:
    # A compression held open so the caller can either take its chaining
    # value or stream root output from it.
    uint32_t cv[8]
    uint32_t block[16]
    uint64_t counter
    uint32_t block_len
    uint32_t flags


cdef inline void _g(uint32_t* s, int a, int b, int c, int d,
                    uint32_t mx, uint32_t my) noexcept nogil:
    s[a] = s[a] + s[b] + mx
    s[d] = s[d] ^ s[a]
    s[d] = (s[d] >> 16) | (s[d] << 16)
    s[c] = s[c] + s[d]
    s[b] = s[b] ^ s[c]
    s[b] = (s[b] >> 12) | (s[b] << 20)
    s[a] = s[a] + s[b] + my
    s[d] = s[d] ^ s[a]
    s[d] = (s[d] >> 8) | (s[d] << 24)
    s[c] = s[c] + s[d]
    s[b] = s[b] ^ s[c]
    s[b] = (s[b] >> 7) | (s[b] << 25)


cdef void _compress(const uint32_t* cv, const uint32_t* block, uint64_t counter,
                    uint32_t block_len, uint32_t flags, uint32_t* out) noexcept nogil:
    cdef uint32_t s[16]
    cdef uint32_t m[16]
    cdef uint32_t shuffled[16]
    cdef int rnd, i
    for i in range(8):
        s[i] = cv[i]
    s[8] = IV[0]
    s[9] = IV[1]
    s[10] = IV[2]
    s[11] = IV[3]
    s[12] = <uint32_t> counter
    s[13] = <uint32_t> (counter >> 32)
    s[14] = block_len
    s[15] = flags
    for i in range(16):
        m[i] = block[i]
    for rnd in range(7):
        _g(s, 0, 4, 8, 12, m[0], m[1])
        _g(s, 1, 5, 9, 13, m[2], m[3])
        _g(s, 2, 6, 10, 14, m[4], m[5])
        _g(s, 3, 7, 11, 15, m[6], m[7])
        _g(s, 0, 5, 10, 15, m[8], m[9])
        _g(s, 1, 6, 11, 12, m[10], m[11])
        _g(s, 2, 7, 8, 13, m[12], m[13])
        _g(s, 3, 4, 9, 14, m[14], m[15])
        if rnd < 6:
            for i in range(16):
                shuffled[i] = m[PERM[i]]
            for i in range(16):
                m[i] = shuffled[i]
    for i in range(8):
        out[i] = s[i] ^ s[8 + i]
        out[8 + i] = s[8 + i] ^ cv[i]


cdef void _load_block(const unsigned char* src, Py_ssize_t srclen,
                      uint32_t* words) noexcept nogil:
    cdef unsigned char padded[BLOCK_LEN]
    cdef int i
    memset(padded, 0, BLOCK_LEN)
    if srclen > 0:
        memcpy(padded, src, srclen)
    for i in range(16):
        words[i] = (
            (<uint32_t> padded[4 * i])
            | (<uint32_t> padded[4 * i + 1] << 8)
            | (<uint32_t> padded[4 * i + 2] << 16)
            | (<uint32_t> padded[4 * i + 3] << 24)
        )


cdef void _chunk_pending(const unsigned char* chunk, Py_ssize_t clen,
                         uint64_t counter, Pending* out) noexcept nogil:
    cdef Py_ssize_t nblocks = (clen + BLOCK_LEN - 1) // BLOCK_LEN
    if nblocks == 0:
        nblocks = 1
    cdef uint32_t cv[8]
    cdef uint32_t words[16]
    cdef uint32_t mixed[16]
    cdef Py_ssize_t i
    cdef uint32_t flags
    memcpy(cv, IV, sizeof(cv))
    for i in range(nblocks - 1):
        _load_block(chunk + BLOCK_LEN * i, BLOCK_LEN, words)
        flags = CHUNK_START if i == 0 else 0
        _compress(cv, words, counter, BLOCK_LEN, flags, mixed)
        memcpy(cv, mixed, sizeof(cv))
    cdef Py_ssize_t last_len = clen - BLOCK_LEN * (nblocks - 1)
    _load_block(chunk + BLOCK_LEN * (nblocks - 1), last_len, out.block)
    memcpy(out.cv, cv, sizeof(cv))
    out.counter = counter
    out.block_len = <uint32_t> last_len
    out.flags = (CHUNK_START if nblocks == 1 else 0) | CHUNK_END


cdef void _parent_pending(const uint32_t* left, const uint32_t* right,
                          Pending* out) noexcept nogil:
    memcpy(out.cv, IV, sizeof(out.cv))
    memcpy(out.block, left, 8 * sizeof(uint32_t))
    memcpy(out.block + 8, right, 8 * sizeof(uint32_t))
    out.counter = 0
    out.block_len = BLOCK_LEN
    out.flags = PARENT


cdef inline void _pending_cv(const Pending* pend, uint32_t* out_cv) noexcept nogil:
    cdef uint32_t mixed[16]
    _compress(pend.cv, pend.block, pend.counter, pend.block_len, pend.flags, mixed)
    memcpy(out_cv, mixed, 8 * sizeof(uint32_t))


def blake3_digest(data: bytes, length: int = 32) -> bytes:
    """Hash data and return the first length bytes of the output stream."""
    cdef const char* raw = data
    cdef const unsigned char* buf = <const unsigned char*> raw
    cdef Py_ssize_t n = len(data)
    cdef Py_ssize_t want = length
    if want < 0:
        raise ValueError("length must be non-negative")

    cdef uint64_t n_chunks = <uint64_t> ((n + CHUNK_LEN - 1) // CHUNK_LEN)
    if n_chunks == 0:
        n_chunks = 1
    # One chaining value per set bit of the chunk counter; 64 slots cover
    # any input addressable by Py_ssize_t.
    cdef uint32_t stack[64][8]
    cdef int depth = 0
    cdef Pending pend
    cdef uint32_t cv[8]
    cdef uint32_t mixed[16]
    cdef uint64_t idx, total
    cdef int i

    for idx in range(n_chunks - 1):
        _chunk_pending(buf + CHUNK_LEN * <Py_ssize_t> idx, CHUNK_LEN, idx, &pend)
        _pending_cv(&pend, cv)
        total = idx + 1
        while total & 1 == 0:
            depth -= 1
            _parent_pending(stack[depth], cv, &pend)
            _pending_cv(&pend, cv)
            total >>= 1
        memcpy(stack[depth], cv, sizeof(cv))
        depth += 1

    cdef Py_ssize_t tail = CHUNK_LEN * <Py_ssize_t> (n_chunks - 1)
    _chunk_pending(buf + tail, n - tail, n_chunks - 1, &pend)
    for i in range(depth - 1, -1, -1):
        _pending_cv(&pend, cv)
        _parent_pending(stack[i], cv, &pend)

    cdef Py_ssize_t out_blocks = (want + BLOCK_LEN - 1) // BLOCK_LEN
    out_buf = bytearray(out_blocks * BLOCK_LEN)
    cdef unsigned char[::1] ov = out_buf
    cdef Py_ssize_t blk
    cdef uint32_t w
    for blk in range(out_blocks):
        _compress(pend.cv, pend.block, <uint64_t> blk, pend.block_len,
                  pend.flags | ROOT, mixed)
        for i in range(16):
            w = mixed[i]
            ov[BLOCK_LEN * blk + 4 * i] = w & 0xFF
            ov[BLOCK_LEN * blk + 4 * i + 1] = (w >> 8) & 0xFF
            ov[BLOCK_LEN * blk + 4 * i + 2] = (w >> 16) & 0xFF
            ov[BLOCK_LEN * blk + 4 * i + 3] = (w >> 24) & 0xFF
    return bytes(out_buf[:want])


# ---------------------------------------------------------------------------
# Exhaustive small-prime censuses.  Callers guard the size of p.
# ---------------------------------------------------------------------------


def census_orders(p: int) -> dict:
    """Histogram of element orders over the whole group."""
    cdef uint64_t up = p
    cdef uint64_t total = up * up * up * up * up * up
    cdef uint64_t limit = up * up
    cdef uint64_t* counts = <uint64_t*> calloc(limit + 2, sizeof(uint64_t))
    if counts == NULL:
        raise MemoryError
    cdef uint64_t r, t, k
    cdef uint64_t x12, x13, x14, x23, x24, x34
    cdef uint64_t y12, y13, y14, y23, y24, y34
    cdef uint64_t z13, z14, z24
    cdef bint overran = False
    with nogil:
        for r in range(total):
            # Rank digits, least significant first: e14, e13, e23, e24, e12, e34.
            t = r
            x14 = t % up
            t //= up
            x13 = t % up
            t //= up
            x23 = t % up
            t //= up
            x24 = t % up
            t //= up
            x12 = t % up
            x34 = t // up
            y12 = x12
            y13 = x13
            y14 = x14
            y23 = x23
            y24 = x24
            y34 = x34
            k = 1
            while y12 | y13 | y14 | y23 | y24 | y34:
                z13 = (y13 + x13 + y12 * x23) % up
                z14 = (y14 + x14 + y12 * x24 + y13 * x34) % up
                z24 = (y24 + x24 + y23 * x34) % up
                y12 = (y12 + x12) % up
                y13 = z13
                y14 = z14
                y23 = (y23 + x23) % up
                y24 = z24
                y34 = (y34 + x34) % up
                k += 1
                if k > limit:
                    overran = True
                    break
            if overran:
                break
            counts[k] += 1
    if overran:
        free(counts)
        raise RuntimeError("order search exceeded p**2 steps")
    result = {}
    for k in range(limit + 1):
        if counts[k]:
            result[int(k)] = int(counts[k])
    free(counts)
    return result


def census_commuting_pairs(p: int) -> int:
    """Count ordered pairs (a, b) with ab == ba by direct comparison.

    Both e14 coordinates drop out of the commutation condition, so the
    loop covers the remaining five coordinates per side and the count is
    scaled by p**2 at the end.
    """
    cdef uint64_t up = p
    cdef uint64_t a12, a13, a23, a24, a34
    cdef uint64_t b12, b13, b23, b24, b34
    cdef uint64_t total = 0
    with nogil:
        for a12 in range(up):
            for a13 in range(up):
                for a23 in range(up):
                    for a24 in range(up):
                        for a34 in range(up):
                            for b12 in range(up):
                                for b13 in range(up):
                                    for b23 in range(up):
                                        if (a13 + b13 + a12 * b23) % up != (b13 + a13 + b12 * a23) % up:
                                            continue
                                        for b24 in range(up):
                                            for b34 in range(up):
                                                if (a24 + b24 + a23 * b34) % up != (b24 + a24 + b23 * a34) % up:
                                                    continue
                                                if (a12 * b24 + a13 * b34) % up == (b12 * a24 + b13 * a34) % up:
                                                    total += 1
    return int(total) * p * p
