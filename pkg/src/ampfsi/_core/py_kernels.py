"""Pure-numpy stencil kernels.

Field arrays have shape (nx, ny): axis 0 is x (periodic), axis 1 is y
(ghost rows included).  Derivatives in y are returned with zeroed edge
columns where the stencil does not fit; callers only read rows where it
does.  A compiled extension with the same signatures may replace this
module at import time (see ampfsi._core).
"""

import numpy as np

COMPILED = False


def dx(f, hx):
    """Centered periodic x-derivative."""
    return (np.roll(f, -1, axis=0) - np.roll(f, 1, axis=0)) / (2.0 * hx)


def dy(f, hy):
    out = np.zeros_like(f)
    out[:, 1:-1] = (f[:, 2:] - f[:, :-2]) / (2.0 * hy)
    return out


def dxx(f, hx):
    return (np.roll(f, -1, axis=0) - 2.0 * f + np.roll(f, 1, axis=0)) / hx**2


def dyy(f, hy):
    out = np.zeros_like(f)
    out[:, 1:-1] = (f[:, 2:] - 2.0 * f[:, 1:-1] + f[:, :-2]) / hy**2
    return out


def laplacian(f, hx, hy):
    return dxx(f, hx) + dyy(f, hy)


def divergence(f1, f2, hx, hy):
    return dx(f1, hx) + dy(f2, hy)


def fourth_diff_x(f, hx):
    """Twice-composed centered second difference in x (periodic)."""
    return dxx(dxx(f, hx), hx)


def fourth_diff_y(f, hy):
    """Twice-composed centered second difference in y; valid two rows in."""
    return dyy(dyy(f, hy), hy)


def shell_restoring(u, K, T, B, h):
    """Restoring force of the shell operator on a periodic 1D array
    (last axis periodic): -K*u + T*u_ss - B*u_ssss with centered stencils."""
    upp = (np.roll(u, -1, axis=-1) - 2.0 * u + np.roll(u, 1, axis=-1)) / h**2
    out = -K * u + T * upp
    if B != 0.0:
        u4 = (np.roll(upp, -1, axis=-1) - 2.0 * upp
              + np.roll(upp, 1, axis=-1)) / h**2
        out = out - B * u4
    return out
