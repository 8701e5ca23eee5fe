"""Backend selection for the numeric kernels.

Set ``RINGGROUPS_NUMBA=0`` to force the pure Python/numpy path.  When the
variable is unset, numba is used if it imports.
"""

from __future__ import annotations

import os

ENV_FLAG = "RINGGROUPS_NUMBA"

try:  # pragma: no cover - exercised implicitly
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False


def numba_requested() -> bool:
    return os.environ.get(ENV_FLAG, "1").strip().lower() not in ("0", "false", "no", "off")


def default_backend() -> str:
    return "numba" if HAVE_NUMBA and numba_requested() else "python"


def resolve_backend(backend: str | None) -> str:
    if backend is None:
        return default_backend()
    if backend not in ("numba", "python"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not installed")
    return backend


def jit(fn):
    """Compile ``fn`` lazily with numba; the plain function stays usable."""
    if not HAVE_NUMBA:
        return None
    return numba.njit(cache=True, nogil=True)(fn)
