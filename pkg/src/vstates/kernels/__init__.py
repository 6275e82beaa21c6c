"""Backends for the quadrature hot loop.

Two interchangeable implementations of `kernel_sums` exist: a compiled
extension and a numpy fallback.  The compiled one is picked at import
time when available; `use_backend` switches explicitly (the benchmark
and the backend-agreement tests rely on that).  Thread count of the
compiled backend follows OMP_NUM_THREADS.
"""

from __future__ import annotations

from . import numpy_backend

try:
    from . import _core
except ImportError:
    _core = None

_BACKENDS = {"python": numpy_backend.kernel_sums}
if _core is not None:
    _BACKENDS["compiled"] = _core.kernel_sums

_active = "compiled" if _core is not None else "python"

__all__ = [
    "kernel_sums",
    "min_separation",
    "active_backend",
    "available_backends",
    "use_backend",
]


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


def active_backend() -> str:
    return _active


def use_backend(name: str) -> None:
    if name not in _BACKENDS:
        raise ValueError(
            f"unknown backend {name!r}; available: {available_backends()}"
        )
    global _active
    _active = name


def kernel_sums(target_z, source_z, source_dz, self_source):
    """Dispatch to the active backend; see `numpy_backend.kernel_sums`."""
    return _BACKENDS[_active](target_z, source_z, source_dz, self_source)


min_separation = numpy_backend.min_separation
