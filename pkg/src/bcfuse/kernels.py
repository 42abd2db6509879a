"""Backend selection for the hot kernels.

Prefers the compiled extension ``bcfuse._kernels`` when it was built, falling
back to the pure-Python twin. Set BCFUSE_PURE_PYTHON=1 to force the fallback
(used by the benchmark and the parity tests).
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("BCFUSE_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND: str = _impl.BACKEND
levenshtein = _impl.levenshtein
iso_exists = _impl.iso_exists
