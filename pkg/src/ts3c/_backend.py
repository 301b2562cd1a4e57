"""Pick the kernel implementation at import time.

The compiled kernels are used when the extension was built. Setting
``TS3C_BACKEND=python`` forces the pure-Python fallback.
"""
import os

from . import _pykernels

kernels = _pykernels
BACKEND = "python"

if os.environ.get("TS3C_BACKEND", "").lower() != "python":
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        kernels = _ckernels
        BACKEND = "cython"


def get_kernels(name=None):
    """Return a kernel module by name (``"cython"``/``"python"``), or the active one."""
    if name is None:
        return kernels
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _ckernels

        return _ckernels
    raise ValueError(f"unknown backend {name!r}")


def available_backends():
    names = ["python"]
    try:
        from . import _ckernels  # noqa: F401
    except ImportError:
        return names
    return ["cython"] + names
