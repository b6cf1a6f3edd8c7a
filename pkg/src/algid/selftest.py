"""Small-prime oracle suite behind `algid selftest`.

Everything here recomputes ground truth from scratch (exhaustive censuses,
random algebraic laws) and compares against the closed forms, so a pass
means the kernel in use agrees with the mathematics, not with itself.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable, TextIO

from . import _backend, codec
from .core import from_rank, identity, product
from .params import GroupParams, test_group
from .workflow import TupleState


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    seconds: float
    message: str = ""


def _census_orders(params: GroupParams) -> CheckResult:
    p = params.p
    hist = _backend.census_orders(p)
    want = {1: 1, p: p**6 - 1}
    ok = dict(hist) == want
    return CheckResult("census-orders", ok, 0.0, f"histogram {dict(hist)}")


def _census_pairs(params: GroupParams) -> CheckResult:
    p = params.p
    pairs = int(_backend.census_commuting_pairs(p))
    want = (2 * p**3 + p**2 - 2 * p) * p**6
    return CheckResult("census-commuting-pairs", pairs == want, 0.0, f"{pairs:,} vs closed form {want:,}")


def _group_axioms(params: GroupParams) -> CheckResult:
    rng = random.Random(20240801)
    p = params.p
    e = (0, 0, 0, 0, 0, 0)
    for _ in range(10_000):
        a, b, c = (tuple(rng.randrange(p) for _ in range(6)) for _ in range(3))
        left = _backend.mul6(_backend.mul6(a, b, p), c, p)
        right = _backend.mul6(a, _backend.mul6(b, c, p), p)
        if left != right:
            return CheckResult("group-axioms", False, 0.0, f"associativity broke at {a},{b},{c}")
        if _backend.mul6(a, e, p) != a or _backend.mul6(e, a, p) != a:
            return CheckResult("group-axioms", False, 0.0, f"identity broke at {a}")
        if _backend.mul6(a, _backend.inv6(a, p), p) != e:
            return CheckResult("group-axioms", False, 0.0, f"inverse broke at {a}")
    return CheckResult("group-axioms", True, 0.0, "10,000 random triples")


def _commuting_subgroup(params: GroupParams) -> CheckResult:
    p = params.p
    exhaustive = p == 5
    if exhaustive:
        members = [_rank_coords(r, p) for r in range(p**4)]
        pairs = ((a, b) for a in members for b in members)
        label = f"all {p**4}^2 pairs"
    else:
        rng = random.Random(7)
        pairs = (
            (_rank_coords(rng.randrange(p**4), p), _rank_coords(rng.randrange(p**4), p))
            for _ in range(10_000)
        )
        label = "10,000 sampled pairs"
    for a, b in pairs:
        ab = _backend.mul6(a, b, p)
        if ab != _backend.mul6(b, a, p):
            return CheckResult("commuting-subgroup", False, 0.0, f"{a} and {b} do not commute")
        if _coords_rank(ab, p) >= p**4:
            return CheckResult("commuting-subgroup", False, 0.0, f"{a}*{b} left the subgroup")
    return CheckResult("commuting-subgroup", True, 0.0, f"closed and Abelian over {label}")


def _element_orders(params: GroupParams) -> CheckResult:
    p = params.p
    ranks = range(p**6) if p == 5 else random.Random(3).sample(range(p**6), 10_000)
    for r in ranks:
        if (from_rank(r, params) ** p).rank != 0:
            return CheckResult("element-orders", False, 0.0, f"rank {r} to the p is not identity")
    return CheckResult("element-orders", True, 0.0, f"a**p = identity ({'exhaustive' if p == 5 else 'sampled'})")


def _lift_involution(params: GroupParams) -> CheckResult:
    p = params.p
    ranks = range(p**6) if p == 5 else random.Random(4).sample(range(p**6), 10_000)
    for r in ranks:
        a = from_rank(r, params)
        if a.lift().lift() != a:
            return CheckResult("lift-involution", False, 0.0, f"rank {r} not restored")
    return CheckResult("lift-involution", True, 0.0, "lift is an involution")


def _creation_factors(params: GroupParams) -> CheckResult:
    rng = random.Random(99)
    for outputs in (1, 2, 3, 5):
        for _ in range(100):
            v = from_rank(rng.randrange(params.p, params.p4), params)
            f = from_rank(rng.randrange(params.p4, params.p6), params)
            state = TupleState.empty(params).insert(v).create(f, outputs)
            combined = v * f * v.inverse()
            if product(state.slot_elements()[:outputs], params) != combined:
                return CheckResult("creation-factors", False, 0.0, f"k={outputs} factors do not telescope")
            if state.product != v * f or state.slot_product() != state.product:
                return CheckResult("creation-factors", False, 0.0, f"k={outputs} product drifted")
    return CheckResult("creation-factors", True, 0.0, "k in {1,2,3,5}, 100 cases each")


def _reserved_distinct(params: GroupParams) -> CheckResult:
    ranks = {codec.reserved_root(params).rank}
    ranks.update(codec.reserved_slot(params, i).rank for i in range(63))
    ok = len(ranks) == 64 and all(r >= params.p4 for r in ranks)
    return CheckResult("reserved-elements", ok, 0.0, "root and 63 slots distinct, all ordered")


def _rank_coords(rank: int, p: int) -> tuple[int, int, int, int, int, int]:
    return (
        rank // p**4 % p,
        rank // p % p,
        rank % p,
        rank // p**2 % p,
        rank // p**3 % p,
        rank // p**5 % p,
    )


def _coords_rank(coords: tuple[int, ...], p: int) -> int:
    e12, e13, e14, e23, e24, e34 = coords
    return e14 + e13 * p + e23 * p**2 + e24 * p**3 + e12 * p**4 + e34 * p**5


_CHECKS: tuple[Callable[[GroupParams], CheckResult], ...] = (
    _census_orders,
    _census_pairs,
    _group_axioms,
    _commuting_subgroup,
    _element_orders,
    _lift_involution,
    _creation_factors,
    _reserved_distinct,
)


def run_selftest(prime: int = 5, budget_seconds: float = 120.0, out: TextIO | None = None) -> bool:
    """Run every check against the given test prime; True iff all pass
    inside the time budget."""
    params = test_group(prime)
    started = time.monotonic()
    all_ok = True
    for check in _CHECKS:
        elapsed = time.monotonic() - started
        if elapsed > budget_seconds:
            all_ok = False
            _emit(out, f"FAIL {check.__name__.lstrip('_')} (budget of {budget_seconds:.0f}s exhausted)")
            continue
        t0 = time.monotonic()
        result = check(params)
        seconds = time.monotonic() - t0
        all_ok = all_ok and result.ok
        status = "PASS" if result.ok else "FAIL"
        _emit(out, f"{status} {result.name} ({seconds:.2f}s) {result.message}".rstrip())
    total = time.monotonic() - started
    _emit(out, f"{'PASS' if all_ok else 'FAIL'} selftest p={prime} backend={_backend.BACKEND_NAME} total {total:.2f}s")
    return all_ok


def _emit(out: TextIO | None, line: str) -> None:
    if out is not None:
        out.write(line + "\n")
