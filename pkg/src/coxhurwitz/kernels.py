"""Backend selection for the orbit and factorization kernels.

The compiled extension is used when it imports, unless the environment
variable ``COXHURWITZ_PURE_PYTHON`` is set to a non-empty value other than
``0``.
"""

from __future__ import annotations

import os

from . import _pykernels

_force_pure = os.environ.get("COXHURWITZ_PURE_PYTHON", "") not in ("", "0")

_ext = None
if not _force_pure:
    try:
        from . import _ckernels as _ext
    except ImportError:  # extension not built
        _ext = None

BACKEND = "cython" if _ext is not None else "python"
_impl = _ext if _ext is not None else _pykernels

orbit_bfs = _impl.orbit_bfs
factorizations_of = _impl.factorizations_of


def backend(name: str):
    """Return the kernel module for ``"python"`` or ``"cython"``."""
    if name == "python":
        return _pykernels
    if name == "cython":
        if _ext is None:
            raise ImportError("compiled kernels are not available")
        return _ext
    raise ValueError(f"unknown backend {name!r}")
