"""Compare the compiled kernel against the pure Python fallback.

Run from the repository root:

    python3 benchmarks/bench_backends.py
    python3 benchmarks/bench_backends.py --census-prime 7 --hash-mib 4
"""

from __future__ import annotations

import argparse
import random
import time

from algid import _purekernel

try:
    from algid import _ckernel
except ImportError:
    _ckernel = None


def _time(fn, *, repeat: int = 3) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_mul(kernel, pairs, p: int) -> float:
    def run():
        mul = kernel.mul6
        for a, b in pairs:
            mul(a, b, p)

    return _time(run)


def bench_inv(kernel, pairs, p: int) -> float:
    def run():
        inv = kernel.inv6
        for a, _ in pairs:
            inv(a, p)

    return _time(run)


def bench_blake3(kernel, data: bytes) -> float:
    return _time(lambda: kernel.blake3_digest(data, 48))


def bench_census_orders(kernel, p: int) -> float:
    return _time(lambda: kernel.census_orders(p), repeat=1)


def bench_census_pairs(kernel, p: int) -> float:
    return _time(lambda: kernel.census_commuting_pairs(p), repeat=1)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--mul-ops", type=int, default=20000,
                        help="random multiply/invert operations per trial")
    parser.add_argument("--hash-mib", type=int, default=1,
                        help="megabytes hashed per trial")
    parser.add_argument("--census-prime", type=int, default=5,
                        help="prime for the census benchmarks")
    parser.add_argument("--seed", type=int, default=2024)
    args = parser.parse_args()

    p = 2**64 - 59
    rng = random.Random(args.seed)
    pairs = [
        (
            tuple(rng.randrange(p) for _ in range(6)),
            tuple(rng.randrange(p) for _ in range(6)),
        )
        for _ in range(args.mul_ops)
    ]
    data = random.Random(args.seed + 1).randbytes(args.hash_mib * 1024 * 1024)

    rows: list[tuple[str, float, float | None]] = []

    def record(label: str, fn, *fn_args) -> None:
        pure = fn(_purekernel, *fn_args)
        compiled = fn(_ckernel, *fn_args) if _ckernel is not None else None
        rows.append((label, pure, compiled))

    record(f"mul6 x{args.mul_ops} (p=2^64-59)", bench_mul, pairs, p)
    record(f"inv6 x{args.mul_ops} (p=2^64-59)", bench_inv, pairs, p)
    record(f"blake3 {args.hash_mib} MiB", bench_blake3, data)
    record(f"census orders p={args.census_prime}", bench_census_orders, args.census_prime)
    record(f"census pairs p={args.census_prime}", bench_census_pairs, args.census_prime)

    if _ckernel is None:
        print("compiled kernel not built; showing pure timings only")
    width = max(len(label) for label, _, _ in rows)
    print(f"{'benchmark':<{width}}  {'pure':>10}  {'compiled':>10}  {'speedup':>8}")
    for label, pure, compiled in rows:
        if compiled is None:
            print(f"{label:<{width}}  {pure:>9.4f}s  {'n/a':>10}  {'n/a':>8}")
        else:
            print(f"{label:<{width}}  {pure:>9.4f}s  {compiled:>9.4f}s  {pure / compiled:>7.1f}x")


if __name__ == "__main__":
    main()
