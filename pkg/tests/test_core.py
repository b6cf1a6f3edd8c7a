import pytest
from hypothesis import given, strategies as st

from algid.core import (
    ElementClass,
    UtElement,
    from_coords,
    from_rank,
    identity,
    product,
    random_element,
)
from algid.errors import RankOutOfRange, VersionMismatch
from algid.params import test_group as small_group
from algid.params import version


def as_matrix(e):
    return [
        [1, e.e12, e.e13, e.e14],
        [0, 1, e.e23, e.e24],
        [0, 0, 1, e.e34],
        [0, 0, 0, 1],
    ]


def matmul(a, b, p):
    return [[sum(a[i][k] * b[k][j] for k in range(4)) % p for j in range(4)] for i in range(4)]


@pytest.mark.parametrize("version_name", ["ut32.4", "ut40.4", "ut64.4"])
def test_product_matches_matrix_multiplication(version_name, rng):
    params = version(version_name)
    for _ in range(300):
        a = random_element(params, rng)
        b = random_element(params, rng)
        assert as_matrix(a * b) == matmul(as_matrix(a), as_matrix(b), params.p)


def test_product_matches_matrix_multiplication_small_prime(p5, rng):
    for _ in range(300):
        a = random_element(p5, rng)
        b = random_element(p5, rng)
        assert as_matrix(a * b) == matmul(as_matrix(a), as_matrix(b), 5)


def test_inverse_matches_matrix_inverse(ut64, rng):
    for _ in range(300):
        a = random_element(ut64, rng)
        assert as_matrix(a * a.inverse()) == as_matrix(identity(ut64))
        assert as_matrix(a.inverse() * a) == as_matrix(identity(ut64))


def coords_strategy(p):
    cell = st.integers(min_value=0, max_value=p - 1)
    return st.tuples(cell, cell, cell, cell, cell, cell)


@given(a=coords_strategy(5), b=coords_strategy(5), c=coords_strategy(5))
def test_associativity_small_prime(a, b, c):
    params = small_group(5)
    x, y, z = (from_coords(t, params) for t in (a, b, c))
    assert (x * y) * z == x * (y * z)


@given(a=coords_strategy(2**64 - 59), b=coords_strategy(2**64 - 59), c=coords_strategy(2**64 - 59))
def test_associativity_widest_version(a, b, c):
    params = version("ut64.4")
    x, y, z = (from_coords(t, params) for t in (a, b, c))
    assert (x * y) * z == x * (y * z)


@given(a=coords_strategy(2**40 - 87))
def test_identity_and_inverse_laws(a):
    params = version("ut40.4")
    x = from_coords(a, params)
    e = identity(params)
    assert x * e == x
    assert e * x == x
    assert x * x.inverse() == e
    assert x.inverse() * x == e
    assert x.inverse().inverse() == x


def test_rank_round_trip_boundaries(officials, p5):
    for params in officials + (p5,):
        p = params.p
        for rank in (0, 1, p - 1, p, p**4 - 1, p**4, p**6 - 1):
            assert from_rank(rank, params).rank == rank


def test_rank_round_trip_random(officials, rng):
    for params in officials:
        for _ in range(2000):
            rank = rng.randrange(params.p6)
            assert from_rank(rank, params).rank == rank


def test_rank_rejects_out_of_range(ut40):
    with pytest.raises(RankOutOfRange):
        from_rank(-1, ut40)
    with pytest.raises(RankOutOfRange):
        from_rank(ut40.p6, ut40)


def test_rank_is_little_endian_in_coordinates(ut40):
    p = ut40.p
    assert from_rank(1, ut40).coords() == (0, 0, 1, 0, 0, 0)
    assert from_rank(p, ut40).coords() == (0, 1, 0, 0, 0, 0)
    assert from_rank(p**2, ut40).coords() == (0, 0, 0, 1, 0, 0)
    assert from_rank(p**3, ut40).coords() == (0, 0, 0, 0, 1, 0)
    assert from_rank(p**4, ut40).coords() == (1, 0, 0, 0, 0, 0)
    assert from_rank(p**5, ut40).coords() == (0, 0, 0, 0, 0, 1)


def test_classification_follows_rank_intervals(ut40, rng):
    p = ut40.p
    assert from_rank(0, ut40).classify() is ElementClass.IDENTITY
    assert from_rank(1, ut40).classify() is ElementClass.CENTER
    assert from_rank(p - 1, ut40).classify() is ElementClass.CENTER
    assert from_rank(p, ut40).classify() is ElementClass.HYBRID
    assert from_rank(p**4 - 1, ut40).classify() is ElementClass.HYBRID
    assert from_rank(p**4, ut40).classify() is ElementClass.ORDERED
    assert from_rank(p**6 - 1, ut40).classify() is ElementClass.ORDERED
    for _ in range(500):
        a = random_element(ut40, rng)
        assert a.is_commuting() == (a.rank < ut40.p4)
        assert a.is_commuting() == (a.classify() is not ElementClass.ORDERED)


def test_commuting_class_is_closed_and_abelian(ut40, rng):
    for _ in range(300):
        a = from_rank(rng.randrange(ut40.p4), ut40)
        b = from_rank(rng.randrange(ut40.p4), ut40)
        assert a * b == b * a
        assert (a * b).rank < ut40.p4


def test_center_commutes_with_everything(ut40, rng):
    for _ in range(300):
        c = from_rank(rng.randrange(1, ut40.p), ut40)
        a = random_element(ut40, rng)
        assert c.commutes_with(a)


def test_commutes_with_matches_product_comparison(p5, rng):
    agree = disagree = 0
    for _ in range(2000):
        a = random_element(p5, rng)
        b = random_element(p5, rng)
        want = a * b == b * a
        assert a.commutes_with(b) == want
        agree += want
        disagree += not want
    assert agree and disagree


def test_every_element_has_order_one_or_p(officials, p5, rng):
    for params in officials + (p5,):
        e = identity(params)
        assert e.order() == 1
        for _ in range(50):
            a = random_element(params, rng)
            if a.is_identity():
                continue
            assert a.order() == params.p
            assert a ** params.p == e


def test_no_short_orders_at_small_prime(p5, rng):
    e = identity(p5)
    for _ in range(200):
        a = random_element(p5, rng)
        if a.is_identity():
            continue
        for k in range(1, 5):
            assert a**k != e
        assert a**5 == e


def test_power_matches_repeated_product(ut40, rng):
    for _ in range(50):
        a = random_element(ut40, rng)
        acc = identity(ut40)
        for k in range(9):
            assert a**k == acc
            acc = acc * a


def test_negative_power_rejected(ut40, rng):
    with pytest.raises(ValueError):
        random_element(ut40, rng) ** -1


def test_conjugation_definition(ut40, rng):
    for _ in range(100):
        a = random_element(ut40, rng)
        g = random_element(ut40, rng)
        assert a.conjugate_by(g) == g * a * g.inverse()


def test_lift_is_an_involution(ut40, p5, rng):
    for params in (ut40, p5):
        for _ in range(300):
            a = random_element(params, rng)
            assert a.lift().lift() == a
            assert a.lift().unlift() == a


def test_lift_swaps_exactly_two_cells(ut40, rng):
    for _ in range(300):
        a = random_element(ut40, rng)
        b = a.lift()
        assert (b.e12, b.e23) == (a.e23, a.e12)
        assert (b.e13, b.e14, b.e24, b.e34) == (a.e13, a.e14, a.e24, a.e34)


def test_lift_fixes_identity_and_center(ut40):
    assert identity(ut40).lift() == identity(ut40)
    c = from_rank(7, ut40)
    assert c.lift() == c


def test_cross_version_arithmetic_rejected(ut32, ut40, p5):
    with pytest.raises(VersionMismatch):
        identity(ut32) * identity(ut40)
    with pytest.raises(VersionMismatch):
        identity(ut40) * identity(p5)
    with pytest.raises(VersionMismatch):
        identity(small_group(5)) * identity(small_group(7))


def test_coordinates_validated_on_construction(p5):
    with pytest.raises(ValueError):
        UtElement(5, 0, 0, 0, 0, 0, p5)
    with pytest.raises(ValueError):
        UtElement(0, 0, -1, 0, 0, 0, p5)


def test_random_element_is_seed_deterministic(ut40):
    import random

    assert random_element(ut40, random.Random(11)) == random_element(ut40, random.Random(11))


def test_product_of_nothing_is_identity(ut40, rng):
    assert product((), ut40) == identity(ut40)
    xs = [random_element(ut40, rng) for _ in range(5)]
    acc = identity(ut40)
    for x in xs:
        acc = acc * x
    assert product(xs, ut40) == acc
