"""JIT switch.

Kernels are compiled with numba unless ``DIFFUSION_SCOPE_NO_JIT`` is set to a
truthy value (or numba cannot be imported), in which case the numpy/scipy
implementations in :mod:`diffusion_scope.kernels` are used instead.
"""
import os

_FALSY = {"", "0", "false", "no", "off"}

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None


def jit_requested():
    return os.environ.get("DIFFUSION_SCOPE_NO_JIT", "").strip().lower() in _FALSY


HAVE_NUMBA = numba is not None
USE_JIT = HAVE_NUMBA and jit_requested()


def njit(*args, **kwargs):
    """``numba.njit`` when available, identity decorator otherwise."""
    kwargs.setdefault("cache", True)
    kwargs.setdefault("nogil", True)
    if numba is None:
        if len(args) == 1 and callable(args[0]):
            return args[0]
        return lambda f: f
    return numba.njit(*args, **kwargs)
