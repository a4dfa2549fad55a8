"""Stencil-kernel backend selection.

Imports the compiled extension when available and falls back to the pure
numpy implementation otherwise.  Set AMPFSI_FORCE_PY=1 to force the
fallback (used by the benchmark to compare both backends).
"""

import os

from . import py_kernels

if os.environ.get("AMPFSI_FORCE_PY"):
    kernels = py_kernels
else:
    try:
        from . import cy_kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        kernels = py_kernels

COMPILED = bool(getattr(kernels, "COMPILED", False))

dx = kernels.dx
dy = kernels.dy
dxx = kernels.dxx
dyy = kernels.dyy
laplacian = kernels.laplacian
divergence = kernels.divergence
fourth_diff_x = kernels.fourth_diff_x
fourth_diff_y = kernels.fourth_diff_y
shell_restoring = kernels.shell_restoring
