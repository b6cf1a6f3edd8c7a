"""Select the compiled kernel when present, else the pure Python one.

Set ALGID_PURE_PYTHON=1 to force the fallback even when the extension is
importable (used by the parity tests and the benchmark).
"""

from __future__ import annotations

import os

from . import _purekernel

if os.environ.get("ALGID_PURE_PYTHON"):
    _impl = _purekernel
else:
    try:
        from . import _ckernel as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _purekernel

COMPILED: bool = bool(getattr(_impl, "COMPILED", False))
BACKEND_NAME: str = "compiled" if COMPILED else "pure"

mul6 = _impl.mul6
inv6 = _impl.inv6
blake3_digest = _impl.blake3_digest
census_orders = _impl.census_orders
census_commuting_pairs = _impl.census_commuting_pairs
