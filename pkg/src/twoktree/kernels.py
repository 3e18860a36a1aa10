"""Backend selection for the search kernels.

The compiled extension handles graphs with at most 64 vertices (one machine word per
adjacency row); larger graphs and environments without the extension use the
pure-Python reference in :mod:`twoktree._pykernels`. Setting ``TWOKTREE_BACKEND=python``
selects the reference even when the extension is built.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _pykernels

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

WORD = 64
BACKEND = "cython" if _compiled is not None else "python"
# TWOKTREE_BACKEND=python forces the fallback even when the extension is present
if os.environ.get("TWOKTREE_BACKEND") == "python":
    BACKEND = "python"


def available() -> list[str]:
    return ["python"] + (["cython"] if _compiled is not None else [])


def get(name: str | None = None) -> ModuleType:
    if name is None:
        name = BACKEND
    if name == "python":
        return _pykernels
    if name == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built")
        return _compiled
    raise ValueError(f"unknown kernel backend {name!r}")


def _pick(n: int, backend: str | None) -> ModuleType:
    mod = get(backend)
    if mod is _compiled and n > WORD:
        return _pykernels
    return mod


def search_roles(masks, n: int, k: int, node_limit: int = 0, time_limit: float = 0.0,
                 backend: str | None = None):
    return _pick(n, backend).search_roles(list(masks), n, k, node_limit, time_limit)


def enumerate_trees(masks, n: int, k: int, backend: str | None = None):
    return _pick(n, backend).enumerate_trees(list(masks), n, k)
