"""Kernel selection.

The compiled kernels are used when the extension imports; otherwise the
pure-Python mirror is used.  ``BIDIAGTRACE_KERNELS=python`` forces the
fallback at import time, ``=compiled`` makes a missing extension an error.
"""

from __future__ import annotations

import os
from contextlib import contextmanager

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # pragma: no cover - depends on build environment
    _compiled = None

_MODULES = {"python": _kernels_py}
if _compiled is not None:
    _MODULES["compiled"] = _compiled


def available() -> list[str]:
    return sorted(_MODULES)


def _initial() -> str:
    want = os.environ.get("BIDIAGTRACE_KERNELS", "auto").strip().lower()
    if want in ("", "auto"):
        return "compiled" if _compiled is not None else "python"
    if want not in ("python", "compiled"):
        raise ImportError(f"BIDIAGTRACE_KERNELS must be auto, python or compiled, not {want!r}")
    if want not in _MODULES:
        raise ImportError("BIDIAGTRACE_KERNELS=compiled but the extension is not built")
    return want


_active = _initial()


def active() -> str:
    return _active


def kernels():
    return _MODULES[_active]


def select(name: str) -> None:
    global _active
    if name == "auto":
        name = "compiled" if _compiled is not None else "python"
    if name not in _MODULES:
        raise ValueError(f"kernel set {name!r} unavailable; have {available()}")
    _active = name


@contextmanager
def use(name: str):
    prev = _active
    select(name)
    try:
        yield
    finally:
        select(prev)
