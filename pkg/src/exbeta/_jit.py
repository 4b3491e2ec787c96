"""Optional numba acceleration.

The double-double series and the kernel's integral-representation evaluator
are plain scalar float loops; numba compiles them ~100x faster.  When numba
is unavailable the same functions run as ordinary Python, bit-identical but
slower.  Set EXBETA_NO_JIT=1 to force the pure-Python path.
"""
import os

_DISABLED = os.environ.get("EXBETA_NO_JIT", "").strip() not in ("", "0")

try:  # pragma: no cover - exercised implicitly by every import
    if _DISABLED:
        raise ImportError
    from numba import njit as _njit

    HAVE_NUMBA = True

    def jit_scalar(func):
        return _njit(cache=True)(func)

except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def jit_scalar(func):
        return func
