"""Kernel selection: the compiled extension when importable, else Python.

Set ``EDGEINSERT_PURE=1`` to force the Python implementation.
"""

from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if not os.environ.get("EDGEINSERT_PURE"):
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"

trace_faces = _impl.trace_faces
dual_csr = _impl.dual_csr
bfs_path = _impl.bfs_path
dijkstra_path = _impl.dijkstra_path


def use(backend: str) -> None:
    """Switch backends at runtime (used by the benchmark)."""
    global trace_faces, dual_csr, bfs_path, dijkstra_path, BACKEND, _impl
    if backend == "python":
        _impl = _kernels_py
    elif backend == "cython":
        from . import _kernels as _compiled  # type: ignore[attr-defined]

        _impl = _compiled
    else:
        raise ValueError(backend)
    BACKEND = backend
    trace_faces = _impl.trace_faces
    dual_csr = _impl.dual_csr
    bfs_path = _impl.bfs_path
    dijkstra_path = _impl.dijkstra_path
