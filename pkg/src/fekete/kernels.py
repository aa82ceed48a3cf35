"""Backend selection for the hot kernels.

The compiled extension is used when it imports; setting the environment
variable ``FEKETE_PURE_PYTHON=1`` forces the numpy fallback.
"""
import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if not os.environ.get("FEKETE_PURE_PYTHON"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py

clenshaw = _impl.clenshaw
bisect_roots = _impl.bisect_roots
remainder_log_sums = _impl.remainder_log_sums
cot_sums = _impl.cot_sums
harmonic_sums = _impl.harmonic_sums


def backend(name):
    """Return the kernel namespace for ``"python"`` or ``"cython"``."""
    if name == "python":
        return _kernels_py
    if name == "cython":
        from . import _kernels

        return _kernels
    raise ValueError(f"unknown kernel backend {name!r}")
