"""Select the Numerov backend: compiled extension if importable, else pure Python.

Set ``MRSOLVE_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _numerov_py

if os.environ.get("MRSOLVE_PURE_PYTHON", "") not in ("", "0"):
    _impl = _numerov_py
    BACKEND = "python"
else:
    try:
        from . import _numerov as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _numerov_py
        BACKEND = "python"

integrate_outward = _impl.integrate_outward
integrate_inward = _impl.integrate_inward

__all__ = ["BACKEND", "integrate_outward", "integrate_inward"]
