import os
import subprocess
import sys

import pytest

from algid import _backend, _purekernel

_ckernel = pytest.importorskip("algid._ckernel", reason="compiled kernel not built")

PRIMES = (5, 251, 2**32 - 5, 2**40 - 87, 2**64 - 59)


def random_coords(rng, p):
    return tuple(rng.randrange(p) for _ in range(6))


def test_backend_selects_the_compiled_kernel():
    assert _ckernel.COMPILED
    assert _backend.COMPILED
    assert _backend.BACKEND_NAME == "compiled"
    assert _backend.mul6 is _ckernel.mul6


@pytest.mark.parametrize("p", PRIMES)
def test_mul6_parity(p, rng):
    for _ in range(400):
        a, b = random_coords(rng, p), random_coords(rng, p)
        assert _ckernel.mul6(a, b, p) == _purekernel.mul6(a, b, p)


@pytest.mark.parametrize("p", PRIMES)
def test_inv6_parity(p, rng):
    for _ in range(400):
        a = random_coords(rng, p)
        assert _ckernel.inv6(a, p) == _purekernel.inv6(a, p)
        assert _ckernel.mul6(a, _ckernel.inv6(a, p), p) == (0, 0, 0, 0, 0, 0)


def test_mul6_saturated_coordinates():
    # Largest official prime: the products feeding each sum are at the
    # 128-bit edge, where a missed reduction would wrap.
    p = 2**64 - 59
    top = (p - 1,) * 6
    assert _ckernel.mul6(top, top, p) == _purekernel.mul6(top, top, p)
    assert _ckernel.inv6(top, p) == _purekernel.inv6(top, p)


def test_blake3_parity_across_tree_shapes(rng):
    sizes = [0, 1, 63, 64, 65, 1023, 1024, 1025, 2048, 3072, 4096, 5000, 16384, 31744]
    for size in sizes:
        data = rng.randbytes(size)
        for length in (32, 1, 30, 64, 131):
            assert _ckernel.blake3_digest(data, length) == _purekernel.blake3_digest(data, length)


def test_census_parity_at_p5():
    assert dict(_ckernel.census_orders(5)) == dict(_purekernel.census_orders(5))
    assert _ckernel.census_commuting_pairs(5) == _purekernel.census_commuting_pairs(5)


def test_pure_python_env_forces_the_fallback():
    env = dict(os.environ, ALGID_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from algid import _backend; print(_backend.BACKEND_NAME)"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "pure"


def test_default_env_prefers_the_compiled_kernel():
    env = {k: v for k, v in os.environ.items() if k != "ALGID_PURE_PYTHON"}
    out = subprocess.run(
        [sys.executable, "-c", "from algid import _backend; print(_backend.BACKEND_NAME)"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "compiled"
