"""Sweep kernel backends: compiled extension with a pure-python fallback.

The compiled module is optional; when the import fails the numpy
implementation is selected automatically.  Both expose the same
``sweep(d, kappa, x_lo, x_hi, tol_clamp)`` contract.  The env variable
CURVKIT_BACKEND ('compiled' or 'python') overrides the automatic choice.
"""

import os

from . import sweep_py

try:
    from . import _sweep as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"


def available_backends():
    if _compiled is not None:
        return ("compiled", "python")
    return ("python",)


def get_sweep(backend=None):
    """Sweep function for a backend name ('compiled', 'python', None=auto)."""
    if backend in (None, "auto"):
        backend = os.environ.get("CURVKIT_BACKEND", "").strip() or BACKEND
    if backend == "compiled":
        if _compiled is None:
            raise ValueError("compiled sweep kernel is not available")
        return _compiled.sweep
    if backend == "python":
        return sweep_py.sweep
    raise ValueError(f"unknown backend {backend!r}")
