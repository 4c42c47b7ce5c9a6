"""JIT switch.

Kernels ship in two flavours: a numba build and a plain numpy build.
``SEMIGROUP_FORGE_JIT=0`` (or a missing numba install) selects numpy.
The flag is read on every dispatch so tests can flip it at runtime.
"""
import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

ENV_FLAG = "SEMIGROUP_FORGE_JIT"


def numba_available():
    return numba is not None


def jit_enabled():
    if numba is None:
        return False
    return os.environ.get(ENV_FLAG, "1").strip().lower() not in ("0", "false", "no", "off")


def njit(fn):
    """Compile with numba when it is importable, otherwise return fn unchanged."""
    if numba is None:
        return fn
    return numba.njit(cache=True)(fn)
