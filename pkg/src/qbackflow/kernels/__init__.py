"""Numerical kernels with a compiled core and a NumPy fallback.

The Cython extension is preferred when it is importable; setting the
environment variable ``QBACKFLOW_PURE=1`` forces the NumPy reference
implementation.  ``BACKEND`` records which one is active.
"""

import os

from . import reference
from .reference import KIND_EXPONENT, KIND_RATE

_FORCE_PURE = os.environ.get("QBACKFLOW_PURE", "").strip().lower() not in ("", "0", "false")

if _FORCE_PURE:
    _impl = reference
    BACKEND = "reference"
else:
    try:
        from . import _compiled as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _impl = reference
        BACKEND = "reference"

phase_damping_quad = _impl.phase_damping_quad
telegraph_memory = _impl.telegraph_memory
telegraph_memory_rate = _impl.telegraph_memory_rate
positive_gain_total = _impl.positive_gain_total


def available_backends() -> dict:
    """Importable kernel backends keyed by name (for tests/benchmarks)."""
    backends = {"reference": reference}
    try:
        from . import _compiled  # type: ignore[attr-defined]

        backends["compiled"] = _compiled
    except ImportError:
        pass
    return backends
