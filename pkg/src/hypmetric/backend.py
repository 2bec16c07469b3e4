"""Kernel backend selection: numba-compiled loops or pure-numpy fallback.

The active backend is chosen once, lazily, from the HYPMETRIC_BACKEND
environment variable ("numba", "numpy", or "auto"; default auto picks numba
when importable). Tests and benchmarks may switch explicitly with use().
HYPMETRIC_THREADS caps the numba threading layer; all kernels are written
single-threaded so results never depend on scheduling.
"""

import os

_kernels = None
_name = None


def _load(name):
    if name == "numba":
        from . import _kernels_numba as mod
    elif name == "numpy":
        from . import _kernels_numpy as mod
    else:
        raise ValueError(f"unknown backend {name!r} (expected 'numba' or 'numpy')")
    return mod


def _default_name():
    req = os.environ.get("HYPMETRIC_BACKEND", "auto").strip().lower()
    if req in ("numba", "numpy"):
        return req
    if req not in ("", "auto"):
        raise ValueError(f"HYPMETRIC_BACKEND={req!r} not recognized")
    try:
        import numba  # noqa: F401
    except ImportError:
        return "numpy"
    return "numba"


def use(name):
    """Activate a backend by name. Returns the kernel module."""
    global _kernels, _name
    mod = _load(name)
    if name == "numba":
        _apply_thread_cap()
    _kernels, _name = mod, name
    return mod


def _apply_thread_cap():
    cap = os.environ.get("HYPMETRIC_THREADS", "").strip()
    if not cap:
        return
    import numba

    try:
        n = max(1, int(cap))
    except ValueError as exc:
        raise ValueError(f"HYPMETRIC_THREADS={cap!r} is not an integer") from exc
    numba.set_num_threads(min(n, numba.config.NUMBA_NUM_THREADS))


def kernels():
    """The active kernel module (lazily initialized from the environment)."""
    if _kernels is None:
        use(_default_name())
    return _kernels


def backend_name():
    kernels()
    return _name
