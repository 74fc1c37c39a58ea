"""Backend selection for the hot kernels.

The compiled ``_ckernels`` module is used when importable; otherwise the pure
Python ``_pykernels`` twin. Set ``NONCONFORMIST_PURE_PYTHON=1`` to force the
fallback.
"""
from __future__ import annotations

import importlib
import os
from types import ModuleType

from . import _pykernels

BACKENDS = ("cython", "python")


def _load_compiled() -> ModuleType | None:
    try:
        return importlib.import_module("nonconformist._ckernels")
    except ImportError:
        return None


_compiled = _load_compiled()


def get_backend(name: str | None = None) -> ModuleType:
    """Kernel module by name; ``None`` picks the import-time default."""
    if name is None:
        return _active
    if name == "python":
        return _pykernels
    if name == "cython":
        if _compiled is None:
            raise ImportError("compiled kernels are not built; run `pip install -e . --no-build-isolation`")
        return _compiled
    raise ValueError(f"unknown backend {name!r}; choose from {BACKENDS}")


def compiled_available() -> bool:
    return _compiled is not None


if _compiled is not None and os.environ.get("NONCONFORMIST_PURE_PYTHON") != "1":
    _active, BACKEND = _compiled, "cython"
else:
    _active, BACKEND = _pykernels, "python"

successor_table = _active.successor_table
attractors = _active.attractors
sweep_graph = _active.sweep_graph
