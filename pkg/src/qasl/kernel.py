"""Backend selection for the PBW kernel.

The compiled ``_ckernel`` extension is used when it has been built; otherwise
the pure-Python ``_pykernel`` is used.  Set ``QASL_BACKEND=python`` to force
the fallback.
"""
import os

from qasl import _pykernel

if os.environ.get("QASL_BACKEND", "").lower() == "python":
    _impl = _pykernel
    BACKEND = "python"
else:
    try:
        from qasl import _ckernel as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernel
        BACKEND = "python"

insert = _impl.insert
mul_word = _impl.mul_word
normal_form = _impl.normal_form
multiply = _impl.multiply
clear_cache = _impl.clear_cache
cache_size = _impl.cache_size


def backends():
    """Available kernel modules keyed by name (used by tests and benchmarks)."""
    out = {"python": _pykernel}
    try:
        from qasl import _ckernel
        out["cython"] = _ckernel
    except ImportError:
        pass
    return out
