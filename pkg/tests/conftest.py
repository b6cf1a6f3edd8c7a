import random
from pathlib import Path

import pytest
from hypothesis import settings

from algid.params import OFFICIAL_VERSIONS, test_group, version

settings.register_profile("suite", deadline=None, max_examples=100)
settings.load_profile("suite")

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"


@pytest.fixture(scope="session")
def ut32():
    return version("ut32.4")


@pytest.fixture(scope="session")
def ut40():
    return version("ut40.4")


@pytest.fixture(scope="session")
def ut64():
    return version("ut64.4")


@pytest.fixture(scope="session")
def p5():
    return test_group(5)


@pytest.fixture(scope="session")
def officials():
    return tuple(version(name) for name in OFFICIAL_VERSIONS)


@pytest.fixture
def rng(request):
    """Fresh deterministic generator, seeded by the test's own id."""
    return random.Random(request.node.nodeid)


def fixture_rows(filename):
    rows = []
    for line in (FIXTURES / filename).read_text("ascii").splitlines():
        if line.startswith("#"):
            continue
        rows.append(tuple(line.split("\t")))
    return rows
