"""Kernel selection.

The compiled extension is used when it imports; otherwise, or when a
compiled call overflows int64, the pure-Python implementation runs.
"""

from . import _fallback

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_backend = "compiled" if _compiled is not None else "python"


def available_backends():
    return ["python"] + (["compiled"] if _compiled is not None else [])


def backend():
    return _backend


def use_backend(name):
    """Switch between ``"compiled"`` and ``"python"``; returns the previous name."""
    global _backend
    if name not in available_backends():
        raise ValueError(f"backend {name!r} not available")
    prev, _backend = _backend, name
    return prev


def _dispatch(fname):
    slow = getattr(_fallback, fname)
    fast = getattr(_compiled, fname, None)

    def call(*args):
        if _backend == "compiled":
            try:
                return fast(*args)
            except OverflowError:
                pass
        return slow(*args)

    call.__name__ = fname
    call.__doc__ = slow.__doc__
    return call


convolve = _dispatch("convolve")
exact_div = _dispatch("exact_div")
strom_counts = _dispatch("strom_counts")
