"""Pick the compiled kernels when importable, the pure-Python twin otherwise."""
import os

from . import _pykernels as python

native = None
if os.environ.get("WDRD_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _kernels as native
    except ImportError:  # extension not built
        native = None

kernels = native if native is not None else python
BACKEND = kernels.NAME


def get(name=None):
    """Return the kernel module called ``name`` ("native"/"python"), or the default."""
    if name is None:
        return kernels
    if name == "python":
        return python
    if name == "native":
        if native is None:
            raise RuntimeError("native kernels are not available")
        return native
    raise ValueError(f"unknown backend {name!r}")
