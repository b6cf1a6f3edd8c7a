import pytest

from algid.codec import encode
from algid.core import from_rank
from algid.errors import ContentConflict, NonCanonical, NotFound
from algid.store import FileStore


@pytest.fixture
def store(tmp_path, ut40):
    return FileStore(tmp_path / "cas", ut40)


def digest_for(params, rng):
    return encode(from_rank(rng.randrange(params.p6), params))


def test_put_get_round_trip(store, ut40, rng):
    d = digest_for(ut40, rng)
    store.put(d, b"payload bytes")
    assert store.get(d) == b"payload bytes"
    assert store.has(d)


def test_put_is_idempotent_for_identical_content(store, ut40, rng):
    d = digest_for(ut40, rng)
    store.put(d, b"same")
    store.put(d, b"same")
    assert store.get(d) == b"same"


def test_put_refuses_to_silently_replace(store, ut40, rng):
    d = digest_for(ut40, rng)
    store.put(d, b"original")
    with pytest.raises(ContentConflict):
        store.put(d, b"different")
    assert store.get(d) == b"original"


def test_get_missing_digest(store, ut40, rng):
    with pytest.raises(NotFound):
        store.get(digest_for(ut40, rng))
    assert not store.has(digest_for(ut40, rng))


def test_digests_are_validated_at_the_boundary(store):
    for bad in ("", "xyz", "!" * 40, "0" * 39):
        for op in (lambda: store.put(bad, b""), lambda: store.get(bad), lambda: store.has(bad)):
            with pytest.raises(NonCanonical):
                op()


# -- aliases -------------------------------------------------------------------


def test_alias_resolves_one_hop(store, ut40, rng):
    content = digest_for(ut40, rng)
    alias = digest_for(ut40, rng)
    store.put(content, b"blob")
    store.alias_put(alias, content)
    assert store.resolve(alias) == content
    assert store.resolve(content) == content
    assert store.get(store.resolve(alias)) == b"blob"


def test_has_does_not_follow_aliases(store, ut40, rng):
    content = digest_for(ut40, rng)
    alias = digest_for(ut40, rng)
    store.put(content, b"blob")
    store.alias_put(alias, content)
    assert not store.has(alias)
    assert store.has(store.resolve(alias))


def test_alias_rejects_self_reference(store, ut40, rng):
    d = digest_for(ut40, rng)
    with pytest.raises(ContentConflict):
        store.alias_put(d, d)


def test_alias_indirection_is_single_level(store, ut40, rng):
    a, b, c = (digest_for(ut40, rng) for _ in range(3))
    store.alias_put(a, b)
    # b is already a target, so it cannot become a source.
    with pytest.raises(ContentConflict):
        store.alias_put(b, c)
    # a is already a source, so it cannot become a target.
    with pytest.raises(ContentConflict):
        store.alias_put(c, a)


def test_realiasing_the_same_target_is_idempotent(store, ut40, rng):
    a, b, c = (digest_for(ut40, rng) for _ in range(3))
    store.alias_put(a, b)
    store.alias_put(a, b)
    with pytest.raises(ContentConflict):
        store.alias_put(a, c)


def test_resolve_validates_unknown_digests(store):
    with pytest.raises(NonCanonical):
        store.resolve("not a digest")


# -- on-disk layout -----------------------------------------------------------


def test_payloads_fan_out_by_digest_prefix(store, ut40, rng):
    d = digest_for(ut40, rng)
    store.put(d, b"x")
    assert (store.root / d[:2] / (d[2:] + ".bin")).read_bytes() == b"x"


def test_alias_files_hold_the_target_line(store, ut40, rng):
    content = digest_for(ut40, rng)
    alias = digest_for(ut40, rng)
    store.alias_put(alias, content)
    path = store.root / alias[:2] / (alias[2:] + ".alias")
    assert path.read_text("ascii") == content + "\n"


def test_writes_leave_no_temp_files(store, ut40, rng):
    for _ in range(20):
        store.put(digest_for(ut40, rng), rng.randbytes(64))
    assert not list(store.root.rglob("*.tmp"))


def test_store_reopens_with_existing_content(tmp_path, ut40, rng):
    d = digest_for(ut40, rng)
    FileStore(tmp_path / "cas", ut40).put(d, b"persisted")
    assert FileStore(tmp_path / "cas", ut40).get(d) == b"persisted"
