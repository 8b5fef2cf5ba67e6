"""Kernel backend selection.

The compiled extension is preferred when importable; the pure-Python twins
are the fallback.  Set RAINBOWMATCH_BACKEND=pure|compiled to force one
(forcing "compiled" raises if the extension is missing).  Both backends
implement identical traversals, so results and node counts agree.
"""

from __future__ import annotations

import os
from contextlib import contextmanager

from . import _pure

try:
    from . import _speedups as _compiled
except ImportError:  # extension not built
    _compiled = None

_FORCED = os.environ.get("RAINBOWMATCH_BACKEND")
if _FORCED not in (None, "", "pure", "compiled"):
    raise ImportError(f"RAINBOWMATCH_BACKEND must be 'pure' or 'compiled', got {_FORCED!r}")
if _FORCED == "compiled" and _compiled is None:
    raise ImportError("RAINBOWMATCH_BACKEND=compiled but the extension is not built")

_impl = _pure if _FORCED == "pure" else (_compiled or _pure)

# the compiled transversal kernel uses single-word bitmasks
_COMPILED_TRANSVERSAL_MAX_N = 64


def backend_name() -> str:
    """Name of the backend currently answering kernel calls."""
    return _impl.BACKEND


def available_backends() -> tuple[str, ...]:
    return ("pure", "compiled") if _compiled is not None else ("pure",)


@contextmanager
def use_backend(name: str):
    """Temporarily route kernel calls to the named backend (for benchmarks
    and parity tests)."""
    global _impl
    if name == "pure":
        chosen = _pure
    elif name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled backend not available")
        chosen = _compiled
    else:
        raise ValueError(f"unknown backend {name!r}")
    previous = _impl
    _impl = chosen
    try:
        yield
    finally:
        _impl = previous


def solve_rainbow(fam_vertex_ids, n_vertices, target, time_limit=None):
    return _impl.solve_rainbow(fam_vertex_ids, n_vertices, target, time_limit)


def solve_transversal(cells, n, target):
    if _impl is not _pure and n > _COMPILED_TRANSVERSAL_MAX_N:
        return _pure.solve_transversal(cells, n, target)
    return _impl.solve_transversal(cells, n, target)
