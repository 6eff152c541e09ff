"""Kernel selection: the compiled extension when available, else pure Python.

Set ``WLAB_KERNEL=pure`` or ``WLAB_KERNEL=c`` to pin a backend; with an
explicit pin, a missing extension is a hard error rather than a silent
fallback.  The selected module is exposed as ``backend.kernel`` and its
``NAME`` attribute reports which one won.
"""

from __future__ import annotations

import importlib
import os

from . import _pykernel

_NAMES = ("c", "pure")


def load(name: str):
    """Return the kernel module registered under ``name``."""
    if name == "pure":
        return _pykernel
    if name == "c":
        return importlib.import_module("wlab._ckernel")
    raise ValueError(f"unknown kernel {name!r}; expected one of {_NAMES}")


def _select():
    forced = os.environ.get("WLAB_KERNEL")
    if forced:
        return load(forced)
    try:
        return importlib.import_module("wlab._ckernel")
    except ImportError:
        return _pykernel


kernel = _select()
