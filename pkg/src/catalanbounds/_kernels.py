"""Backend selection for the integer scan.

The compiled ``_cscan`` module is used when it imports; setting
``CATALANBOUNDS_PURE_PYTHON=1`` forces the pure-Python fallback.
"""

from __future__ import annotations

import os

from . import _pyscan

_BACKENDS = {"python": _pyscan.scan}

try:
    from . import _cscan
except ImportError:  # extension not built
    _cscan = None
else:
    _BACKENDS["cython"] = _cscan.scan

if os.environ.get("CATALANBOUNDS_PURE_PYTHON", "") not in ("", "0") or _cscan is None:
    BACKEND = "python"
else:
    BACKEND = "cython"

scan = _BACKENDS[BACKEND]


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


def get_scan(name: str | None = None):
    """Scan function for ``name`` (default: the selected backend)."""
    if name is None:
        return scan
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {available_backends()}") from None
