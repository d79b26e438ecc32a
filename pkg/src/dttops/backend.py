"""Kernel backend selection: compiled extension when available, NumPy otherwise.

The active backend is chosen once at import (override with the environment
variable DTTOPS_BACKEND=python|cython) and can be switched at runtime with
:func:`use_backend`, which the benchmark CLI uses to compare the two.
"""

from __future__ import annotations

import os

from . import _kernels_py

try:
    from . import _kernels as _kernels_cy
except ImportError:
    _kernels_cy = None

_active = _kernels_py


def available_backends():
    names = ["python"]
    if _kernels_cy is not None:
        names.append("cython")
    return tuple(names)


def use_backend(name: str):
    """Select the kernel backend by name ('python', 'cython', or 'auto')."""
    global _active
    if name == "auto":
        _active = _kernels_cy if _kernels_cy is not None else _kernels_py
    elif name == "python":
        _active = _kernels_py
    elif name == "cython":
        if _kernels_cy is None:
            raise RuntimeError("compiled kernel extension is not available")
        _active = _kernels_cy
    else:
        raise ValueError(f"unknown backend {name!r}")
    return _active


def active_backend_name() -> str:
    return _active.NAME


def matvec(indices, values, counts, x):
    return _active.matvec(indices, values, counts, x)


def pgf_apply(indices, values, counts, coeffs, x):
    return _active.pgf_apply(indices, values, counts, coeffs, x)


def cheb_apply(indices, values, counts, coeffs, scale, x):
    return _active.cheb_apply(indices, values, counts, coeffs, scale, x)


def quad_form(indices, values, counts, x):
    return _active.quad_form(indices, values, counts, x)


use_backend(os.environ.get("DTTOPS_BACKEND", "auto"))
