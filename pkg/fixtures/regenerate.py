"""Regenerate the golden fixture files in this directory.

    python3 fixtures/regenerate.py

digests.tsv pins the codec: one line per (version, rank, digest), mixing
class boundaries, reserved elements, and seeded random ranks.  gen.tsv
pins content-derived value digests for three fixed inputs.  Both files
are deterministic; a regeneration that changes either is a codec or
hash break.
"""

from __future__ import annotations

import random
from pathlib import Path

from algid import codec, generate
from algid.core import from_rank
from algid.params import OFFICIAL_VERSIONS, version

HERE = Path(__file__).resolve().parent

GEN_CONTENTS = (b"", b"abc", b"\x00" * 1024)


def digest_rows() -> list[tuple[str, int, str]]:
    rows = []
    for name in OFFICIAL_VERSIONS:
        params = version(name)
        p = params.p
        ranks = [
            0, 1, 2, p - 1,                      # identity and center edges
            p, p + 1, 4095, 4096, params.p4 - 1,  # hybrid edges incl. the q/w split
            params.p4, params.p4 + 1, params.p6 - 1,
            codec.reserved_root(params).rank,
            codec.reserved_slot(params, 0).rank,
            codec.reserved_slot(params, 62).rank,
            codec.removal_element(params, index=1).rank,
            codec.removal_element(params, name="src").rank,
        ]
        rng = random.Random(f"digests:{name}")
        for _ in range(6):
            ranks.append(rng.randrange(1, p))
            ranks.append(rng.randrange(p, params.p4))
            ranks.append(rng.randrange(params.p4, params.p6))
        for rank in ranks:
            rows.append((name, rank, codec.encode(from_rank(rank, params))))
    return rows


def gen_rows() -> list[tuple[str, str, str]]:
    rows = []
    for name in OFFICIAL_VERSIONS:
        params = version(name)
        for content in GEN_CONTENTS:
            rows.append((name, content.hex(), codec.encode(generate.value_element(content, params))))
    return rows


def render_digests() -> str:
    lines = ["# version\trank\tdigest"]
    lines += [f"{name}\t{rank}\t{digest}" for name, rank, digest in digest_rows()]
    return "\n".join(lines) + "\n"


def render_gen() -> str:
    lines = ["# version\tcontent-hex\tdigest"]
    lines += [f"{name}\t{hexstr}\t{digest}" for name, hexstr, digest in gen_rows()]
    return "\n".join(lines) + "\n"


def main() -> None:
    (HERE / "digests.tsv").write_text(render_digests(), "ascii")
    (HERE / "gen.tsv").write_text(render_gen(), "ascii")
    print(f"wrote {HERE / 'digests.tsv'} and {HERE / 'gen.tsv'}")


if __name__ == "__main__":
    main()
