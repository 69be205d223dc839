"""Kernel backend selection.

The compiled core (_core, Cython) is used when importable; otherwise the
numpy fallback.  Set BOOMTAB_FORCE_FALLBACK=1 to skip the compiled core
(benchmarks use this to time both).  Both backends return bit-identical
results; only speed differs.
"""

import os

from . import _fallback

_FUNCTIONS = [
    "ddt_entry", "ddt_row", "ddt_full",
    "bct_entry", "bct_full",
    "fbct_entry", "fbct_full",
    "dd_entry", "dd_full",
    "lbct_entry", "lbct_full",
    "ubct_entry", "ubct_entry_pairs", "ubct_full",
    "ebct_entry", "ebct_full",
    "ubct_entry_invbased", "lbct_entry_invbased", "ebct_entry_invbased",
]

if os.environ.get("BOOMTAB_FORCE_FALLBACK"):
    _impl = _fallback
    BACKEND = "fallback"
else:
    try:
        from . import _core as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = _fallback
        BACKEND = "fallback"


def get_backend(name=None):
    """Return a kernel module by name ('compiled' or 'fallback').

    name=None returns the active backend.  Raises ImportError if the
    compiled core was requested but is not built.
    """
    if name is None:
        return _impl
    if name == "fallback":
        return _fallback
    if name == "compiled":
        from . import _core
        return _core
    raise ValueError(f"unknown backend {name!r}")


globals().update({fn: getattr(_impl, fn) for fn in _FUNCTIONS})

__all__ = _FUNCTIONS + ["BACKEND", "get_backend"]
