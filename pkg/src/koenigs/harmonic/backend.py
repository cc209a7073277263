"""Select the walk kernel at import time.

The compiled extension is used when it imports; ``KOENIGS_BACKEND=python``
forces the numpy fallback.  ``KOENIGS_THREADS`` caps the number of OpenMP
workers in the compiled kernel; results do not depend on it.
"""
from __future__ import annotations

import os

from . import _wos_py

try:
    from . import _wos_kernel as _compiled
except ImportError:  # pragma: no cover - depends on the build
    _compiled = None

KERNELS = {"python": _wos_py}
if _compiled is not None:
    KERNELS["compiled"] = _compiled


def default_backend() -> str:
    want = os.environ.get("KOENIGS_BACKEND", "").strip().lower()
    if want in KERNELS:
        return want
    return "compiled" if "compiled" in KERNELS else "python"


def get_kernel(name: str | None = None):
    name = name or default_backend()
    if name not in KERNELS:
        raise ValueError(f"backend {name!r} unavailable (have {sorted(KERNELS)})")
    return KERNELS[name]


def thread_count() -> int:
    env = os.environ.get("KOENIGS_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


BACKEND = default_backend()
