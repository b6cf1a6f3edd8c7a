import io
import json
import subprocess
import sys

import pytest

from algid import codec
from algid.cli import main
from algid.core import from_rank, identity
from algid.generate import function_element, value_element


@pytest.fixture
def cli(capsys, monkeypatch):
    monkeypatch.delenv("ALGID_VERSION", raising=False)

    def run(*argv):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return run


def digest_of(element):
    return codec.encode(element)


# -- hashing -------------------------------------------------------------------


def test_hash_value_matches_the_library(cli, tmp_path, ut40):
    blob = tmp_path / "blob"
    blob.write_bytes(b"abc")
    code, out, _ = cli("hash", "--kind", "value", str(blob))
    assert code == 0
    assert out.strip() == digest_of(value_element(b"abc", ut40))


def test_hash_function_differs_from_value(cli, tmp_path, ut40):
    blob = tmp_path / "blob"
    blob.write_bytes(b"abc")
    _, value_out, _ = cli("hash", "--kind", "value", str(blob))
    code, function_out, _ = cli("hash", "--kind", "function", str(blob))
    assert code == 0
    assert function_out.strip() == digest_of(function_element(b"abc", ut40))
    assert function_out != value_out


def test_hash_reads_stdin_dash(cli, monkeypatch, ut40):
    monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO(b"piped")))
    code, out, _ = cli("hash", "--kind", "value", "-")
    assert code == 0
    assert out.strip() == digest_of(value_element(b"piped", ut40))


def test_hash_requires_a_kind(cli, tmp_path):
    code, _, _ = cli("hash", str(tmp_path / "nope"))
    assert code == 2


def test_hash_missing_file_is_a_clean_error(cli, tmp_path):
    code, _, err = cli("hash", "--kind", "value", str(tmp_path / "nope"))
    assert code == 1
    assert err.startswith("error: cannot read")


def test_store_put_missing_file_is_a_clean_error(cli, tmp_path, ut40):
    digest = digest_of(from_rank(ut40.p**4, ut40))
    code, _, err = cli("store", str(tmp_path / "cas"), "put", digest, str(tmp_path / "nope"))
    assert code == 1
    assert err.startswith("error: cannot read")


# -- group operations -----------------------------------------------------------


def test_op_folds_left_to_right(cli, ut40, rng):
    a = from_rank(rng.randrange(ut40.p6), ut40)
    b = from_rank(rng.randrange(ut40.p6), ut40)
    code, out, _ = cli("op", digest_of(a), digest_of(b))
    assert code == 0
    assert out.strip() == digest_of(a * b)


def test_op_with_inverse_gives_the_identity_digest(cli, ut40, rng):
    a = from_rank(rng.randrange(ut40.p6), ut40)
    code, out, _ = cli("op", digest_of(a), digest_of(a.inverse()))
    assert code == 0
    assert out.strip() == "0" * 40


def test_inv_round_trips(cli, ut40, rng):
    a = from_rank(rng.randrange(ut40.p6), ut40)
    code, out, _ = cli("inv", digest_of(a))
    assert code == 0
    assert out.strip() == digest_of(a.inverse())
    code, out, _ = cli("op", digest_of(a), out.strip())
    assert out.strip() == digest_of(identity(ut40))


def test_pow_matches_repeated_product(cli, ut40, rng):
    a = from_rank(rng.randrange(ut40.p6), ut40)
    code, out, _ = cli("pow", digest_of(a), "3")
    assert code == 0
    assert out.strip() == digest_of(a * a * a)
    code, out, _ = cli("pow", digest_of(a), "0")
    assert out.strip() == "0" * 40


def test_pow_rejects_negative_exponents(cli, ut40):
    code, _, err = cli("pow", "0" * 40, "-2")
    assert code == 2
    assert "non-negative" in err


def test_classify_prints_class_and_rank(cli, ut40):
    code, out, _ = cli("classify", "0" * 40)
    assert (code, out.strip()) == (0, "identity 0")
    code, out, _ = cli("classify", digest_of(from_rank(1, ut40)))
    assert (code, out.strip()) == (0, "center 1")
    code, out, _ = cli("classify", digest_of(from_rank(ut40.p4, ut40)))
    assert (code, out.strip()) == (0, f"ordered {ut40.p4}")


def test_commutes_reports_and_exits(cli, ut40):
    f = function_element(b"stage one", ut40)
    g = function_element(b"stage two", ut40)
    assert not f.commutes_with(g)
    code, out, _ = cli("commutes", digest_of(f), digest_of(g))
    assert (code, out.strip()) == (1, "false")
    code, out, _ = cli("commutes", "0" * 40, digest_of(f))
    assert (code, out.strip()) == (0, "true")


def test_bad_digests_exit_one(cli):
    code, _, err = cli("classify", "not-a-digest")
    assert code == 1
    assert err.startswith("error:")


# -- escapes and reserved digests -------------------------------------------------


def test_at_escape_admits_leading_dash_digests(cli, ut40):
    rho = digest_of(codec.reserved_root(ut40))
    assert rho.startswith("-")
    code, out, _ = cli("classify", "@" + rho)
    assert code == 0
    assert out.strip().startswith("ordered")


def test_unescaped_dash_digest_is_a_usage_error(cli, ut40):
    code, _, _ = cli("classify", digest_of(codec.reserved_root(ut40)))
    assert code == 2


def test_reserved_rho_theta_delta(cli, ut40):
    code, out, _ = cli("reserved", "rho")
    assert (code, out.strip()) == (0, digest_of(codec.reserved_root(ut40)))
    code, out, _ = cli("reserved", "theta", "5")
    assert (code, out.strip()) == (0, digest_of(codec.reserved_slot(ut40, 5)))
    code, out, _ = cli("reserved", "delta", "--index", "2")
    assert (code, out.strip()) == (0, digest_of(codec.removal_element(ut40, index=2)))
    code, out, _ = cli("reserved", "delta", "--name", "src")
    assert (code, out.strip()) == (0, digest_of(codec.removal_element(ut40, name="src")))


def test_reserved_argument_combinations(cli):
    assert cli("reserved", "rho", "3")[0] == 2
    assert cli("reserved", "theta")[0] == 2
    assert cli("reserved", "theta", "1", "--index", "1")[0] == 2
    assert cli("reserved", "delta")[0] == 2
    assert cli("reserved", "delta", "--index", "1", "--name", "x")[0] == 2
    assert cli("reserved", "theta", "63")[0] == 1


def test_key_digest(cli, ut40):
    code, out, _ = cli("key", "name")
    assert (code, out.strip()) == (0, digest_of(codec.key_element("name", ut40)))


def test_import_legacy(cli, ut40):
    code, out, _ = cli("import", "--base", "16", "--mode", "ordered", "ff")
    assert (code, out.strip()) == (0, digest_of(from_rank(ut40.p4 + 255, ut40)))
    code, out, _ = cli("import", "--base", "62", "--mode", "commuting", "Z")
    assert (code, out.strip()) == (0, digest_of(from_rank(61, ut40)))
    assert cli("import", "--base", "10", "--mode", "ordered", "99")[0] == 2
    assert cli("import", "--base", "16", "--mode", "ordered", "zz")[0] == 1


# -- version selection -------------------------------------------------------------


def test_version_flag_switches_the_group(cli, ut32):
    code, out, _ = cli("--version", "ut32.4", "key", "name")
    assert code == 0
    assert out.strip() == digest_of(codec.key_element("name", ut32))
    assert len(out.strip()) == 32


def test_version_env_sets_the_default(cli, monkeypatch, ut64):
    monkeypatch.setenv("ALGID_VERSION", "ut64.4")
    code, out, _ = cli("key", "name")
    assert code == 0
    assert len(out.strip()) == 64


def test_version_flag_beats_the_env(cli, monkeypatch, ut32):
    monkeypatch.setenv("ALGID_VERSION", "ut64.4")
    _, out, _ = cli("--version", "ut32.4", "key", "name")
    assert len(out.strip()) == 32


def test_invalid_version_env_is_a_usage_error(cli, monkeypatch):
    monkeypatch.setenv("ALGID_VERSION", "ut48.4")
    assert cli("key", "name")[0] == 2


def test_invalid_version_flag_is_a_usage_error(cli):
    assert cli("--version", "ut48.4", "key", "name")[0] == 2


# -- analyze ------------------------------------------------------------------------


def test_analyze_default_report(cli):
    code, out, _ = cli("analyze")
    assert code == 0
    assert "gap-xi240" in out
    assert "4.747562e-10" in out
    assert "expected-expressions(l=10000000)" in out
    assert "2.764052e+15" in out


def test_analyze_tsv_rows(cli):
    code, out, _ = cli("analyze", "--format", "tsv", "--length", "100", "--length", "1000")
    lines = dict(line.split("\t") for line in out.strip().splitlines())
    assert code == 0
    assert lines["version"] == "ut40.4"
    assert lines["gap-xi240"] == "4.747562e-10"
    assert "ambiguity-P_m(l=100)" in lines and "ambiguity-P_m(l=1000)" in lines


def test_analyze_other_versions(cli):
    code, out, _ = cli("--version", "ut32.4", "analyze", "--format", "tsv")
    assert code == 0
    assert dict(line.split("\t") for line in out.strip().splitlines())["gap-xi192"] == "6.984919e-09"


def test_analyze_table(cli):
    code, out, _ = cli("analyze", "--candidates", "--format", "tsv")
    assert code == 0
    rows = [line.split("\t") for line in out.strip().splitlines() if line.startswith(("S_", "A_", "D_", "GL", "SL", "W_", "ut"))]
    assert len(rows) == 10
    by_label = {r[0]: r for r in rows}
    assert by_label["SL_4,7129"][3] == "5.350555e-03"
    assert by_label["W_2,7xW_2,13xW_2,23"][4] == "n/a"
    assert by_label["ut40.4"][2] == "240"
    assert by_label["ut32.4"][4] == "2.524355e-29"


# -- plan and store -------------------------------------------------------------------


@pytest.fixture
def plan_file(tmp_path, ut40):
    steps = [
        {"kind": "value", "digest": digest_of(value_element(b"alpha", ut40))},
        {"kind": "map_entry", "key": "src", "digest": digest_of(value_element(b"beta", ut40))},
        {"kind": "function", "digest": digest_of(function_element(b"stage one", ut40))},
        {"kind": "create", "digest": digest_of(function_element(b"stage two", ut40)), "outputs": 2},
        {"kind": "remove_index", "index": 1},
        {"kind": "remove_name", "name": "src"},
    ]
    path = tmp_path / "plan.json"
    path.write_text(json.dumps({"version": "ut40.4", "steps": steps}))
    return path


def test_plan_text_report(cli, plan_file):
    code, out, _ = cli("plan", str(plan_file))
    assert code == 0
    assert "three-way check: ok" in out
    assert "final " in out


def test_plan_json_report_with_store_hits(cli, tmp_path, plan_file, ut40):
    store_dir = tmp_path / "cas"
    code, out, _ = cli("plan", str(plan_file), "--json", "--store", str(store_dir))
    report = json.loads(out)
    assert code == 0
    assert report["three_way_ok"] is True
    assert report["final_hit"] is False
    payload = tmp_path / "payload"
    payload.write_bytes(b"cached")
    assert cli("store", str(store_dir), "put", "@" + report["final"], str(payload))[0] == 0
    _, out, _ = cli("plan", str(plan_file), "--json", "--store", str(store_dir))
    assert json.loads(out)["final_hit"] is True


def test_plan_missing_file(cli, tmp_path):
    code, _, err = cli("plan", str(tmp_path / "absent.json"))
    assert code == 1
    assert "cannot read plan" in err


def test_store_cli_round_trip(cli, tmp_path, ut40, rng):
    store_dir = str(tmp_path / "cas")
    d = digest_of(from_rank(rng.randrange(ut40.p6), ut40))
    payload = tmp_path / "payload"
    payload.write_bytes(b"store me")
    assert cli("store", store_dir, "has", d) == (1, "false\n", "")
    assert cli("store", store_dir, "put", d, str(payload))[0] == 0
    assert cli("store", store_dir, "has", d) == (0, "true\n", "")
    other = digest_of(from_rank(rng.randrange(ut40.p6), ut40))
    assert cli("store", store_dir, "alias", other, d)[0] == 0
    assert cli("store", store_dir, "resolve", other) == (0, d + "\n", "")
    assert cli("store", store_dir, "alias", other, "0" * 40)[0] == 1


def test_store_get_writes_raw_bytes_to_stdout(tmp_path, ut40):
    store_dir = str(tmp_path / "cas")
    d = digest_of(value_element(b"\x00\xff binary", ut40))
    payload = tmp_path / "payload"
    payload.write_bytes(b"\x00\xff binary")
    subprocess.run(["algid", "store", store_dir, "put", d, str(payload)], check=True)
    got = subprocess.run(["algid", "store", store_dir, "get", d], check=True, capture_output=True)
    assert got.stdout == b"\x00\xff binary"
    piped = subprocess.run(["algid", "hash", "--kind", "value"], input=b"\x00\xff binary", capture_output=True, check=True)
    assert piped.stdout.decode().strip() == d


def test_selftest_passes_at_the_default_prime(cli):
    code, out, _ = cli("selftest", "--prime", "5")
    assert code == 0
    assert "PASS selftest p=5" in out
    assert "FAIL" not in out
