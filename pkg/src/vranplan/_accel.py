"""JIT switch for the numeric kernels.

Kernels are compiled with numba when it is importable, unless the
``VRANPLAN_DISABLE_JIT`` environment variable is set to a truthy value, in
which case the vectorised numpy implementations are used instead.
"""
import os

_FLAG = "VRANPLAN_DISABLE_JIT"

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

HAVE_NUMBA = numba is not None
JIT_ENABLED = HAVE_NUMBA and os.environ.get(_FLAG, "").strip().lower() not in ("1", "true", "yes", "on")


def njit(fn):
    """Compile ``fn`` in nopython mode, or hand it back untouched without numba."""
    if numba is None:
        return fn
    return numba.njit(cache=True)(fn)


def backend() -> str:
    return "numba" if JIT_ENABLED else "numpy"
