"""Backend selection for the interlacing-chain kernel.

The compiled kernel is used when it was built and the problem fits its
64-bit encoding; otherwise the pure-Python kernel runs.
"""
from __future__ import annotations

import logging

from ._diagdp_py import grow_chain as grow_chain_py

try:
    from ._diagdp_c import grow_chain as grow_chain_c
except ImportError:  # extension not built
    grow_chain_c = None

HAVE_COMPILED = grow_chain_c is not None
log = logging.getLogger(__name__)


def grow_chain(sums, hi: int, max_states: int | None = None, backend: str = "auto"):
    if backend not in ("auto", "c", "python"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "python" or (backend == "auto" and not HAVE_COMPILED):
        return grow_chain_py(sums, hi, max_states)
    if grow_chain_c is None:
        raise ImportError("compiled kernel rbirkhoff._diagdp_c is not available")
    try:
        return grow_chain_c(list(sums), hi, max_states)
    except OverflowError:
        if backend == "c":
            raise
        log.debug("compiled kernel overflowed; retrying in pure Python")
        return grow_chain_py(sums, hi, max_states)
