"""File-backed content-addressable store keyed by canonical digests.

Layout: <root>/<first two digest chars>/<rest>.bin for payloads and
<root>/<first two>/<rest>.alias for alias records (one line: the target
digest).  Writes go to a temp file in the same directory and are renamed
into place, so readers only ever see absent or complete entries.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Iterator

from .codec import decode
from .errors import ContentConflict, NotFound
from .params import GroupParams


class FileStore:
    def __init__(self, root: str | Path, params: GroupParams) -> None:
        self.root = Path(root)
        self.params = params
        self.root.mkdir(parents=True, exist_ok=True)

    # -- payloads -----------------------------------------------------------

    def put(self, digest: str, payload: bytes) -> None:
        """Store payload under digest; idempotent for identical payloads."""
        path = self._path(digest, ".bin")
        if path.exists():
            if path.read_bytes() != payload:
                raise ContentConflict(f"{digest} already holds different content")
            return
        self._write_atomic(path, payload)

    def get(self, digest: str) -> bytes:
        path = self._path(digest, ".bin")
        try:
            return path.read_bytes()
        except FileNotFoundError:
            raise NotFound(digest) from None

    def has(self, digest: str) -> bool:
        return self._path(digest, ".bin").exists()

    # -- aliases ------------------------------------------------------------

    def alias_put(self, from_digest: str, to_digest: str) -> None:
        """Link from_digest to to_digest; one level of indirection only."""
        self._validate(to_digest)
        if from_digest == to_digest:
            raise ContentConflict("digest cannot alias itself")
        if self._alias_path(to_digest).exists():
            raise ContentConflict(f"target {to_digest} is itself an alias")
        for source, target in self._aliases():
            if source == from_digest:
                if target == to_digest:
                    return
                raise ContentConflict(f"{from_digest} already aliased to {target}")
            if target == from_digest:
                raise ContentConflict(f"{from_digest} is an alias target (chain depth > 1)")
        self._write_atomic(self._alias_path(from_digest), to_digest.encode("ascii") + b"\n")

    def resolve(self, digest: str) -> str:
        """Follow at most one alias; unaliased digests map to themselves."""
        path = self._alias_path(digest)
        try:
            return path.read_text("ascii").rstrip("\n")
        except FileNotFoundError:
            self._validate(digest)
            return digest

    # -- internals ------------------------------------------------------------

    def _aliases(self) -> Iterator[tuple[str, str]]:
        # Linear scan; alias counts stay small (one per external identity).
        for path in self.root.glob("*/*.alias"):
            source = path.parent.name + path.name[: -len(".alias")]
            yield source, path.read_text("ascii").rstrip("\n")

    def _path(self, digest: str, suffix: str) -> Path:
        self._validate(digest)
        return self.root / digest[:2] / (digest[2:] + suffix)

    def _alias_path(self, digest: str) -> Path:
        return self._path(digest, ".alias")

    def _validate(self, digest: str) -> None:
        decode(digest, self.params)

    def _write_atomic(self, path: Path, payload: bytes) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.parent / f".{os.getpid()}.{id(payload)}.tmp"
        with open(tmp, "wb") as fh:
            fh.write(payload)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
        dir_fd = os.open(path.parent, os.O_RDONLY)
        try:
            os.fsync(dir_fd)
        finally:
            os.close(dir_fd)
