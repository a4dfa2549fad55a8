"""Discrete fluid model on the periodic channel grid.

Velocity-pressure form of the linearized incompressible equations:
second-order centered differences, Adams-Bashforth / trapezoidal
predictor-corrector for momentum, and a sparse pressure Poisson solve
whose interface row carries either a Robin condition (added-mass
partitioned coupling) or a Neumann condition (traditional coupling).

Array layout follows Grid2D: shape (nx, N2 + 1 + 2*ghost), axis 0
periodic in x, rows jb..ji span the channel from wall to interface.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from ._core import (dx, dy, dxx, dyy, laplacian, divergence,
                    fourth_diff_x, fourth_diff_y)
from .params import Problem

#: relative residual bound enforced after every pressure solve
PRESSURE_RESIDUAL_TOL = 1e-10


class PressureSolveError(RuntimeError):
    pass


def dx1(f, hx):
    """Centered periodic derivative of a 1D interface/wall array."""
    return (np.roll(f, -1) - np.roll(f, 1)) / (2.0 * hx)


def dxx1(f, hx):
    return (np.roll(f, -1) - 2.0 * f + np.roll(f, 1)) / hx**2


@dataclass
class FluidState:
    """Fluid fields plus the history the multistep integrator needs."""

    grid: object
    v1: np.ndarray
    v2: np.ndarray
    p: np.ndarray
    F1_prev: np.ndarray
    F2_prev: np.ndarray
    p_nm1: np.ndarray
    p_nm2: np.ndarray
    t: float = 0.0

    @classmethod
    def zeros(cls, grid, t=0.0):
        return cls(grid, grid.alloc(), grid.alloc(), grid.alloc(),
                   grid.alloc(), grid.alloc(), grid.alloc(), grid.alloc(), t)

    def copy(self):
        return FluidState(self.grid, self.v1.copy(), self.v2.copy(),
                          self.p.copy(), self.F1_prev.copy(),
                          self.F2_prev.copy(), self.p_nm1.copy(),
                          self.p_nm2.copy(), self.t)

    def max_norm(self):
        g = self.grid
        r = g.rows
        return max(np.abs(self.v1[:, r]).max(), np.abs(self.v2[:, r]).max(),
                   np.abs(self.p[:, r]).max())


def update_slices(grid, problem):
    """Row ranges advanced by the momentum update, per velocity component.

    The wall row joins the tangential update only for the slip (inviscid)
    wall; the normal velocity at the wall is always a boundary value.
    """
    if problem.viscous:
        s1 = slice(grid.jb + 1, grid.ji + 1)
    else:
        s1 = slice(grid.jb, grid.ji + 1)
    s2 = slice(grid.jb + 1, grid.ji + 1)
    return s1, s2


def momentum_rhs(grid, v1, v2, p, params, d2=0.0, forcing=None):
    """Spatial right-hand side F = -grad p + mu*lap v - dissipation + f.

    The artificial dissipation is rho*d2*h^3 times the composed centered
    fourth difference per direction; its y part is applied only on rows
    where the five-row stencil stays inside the channel, which keeps the
    term ghost-free and O(h) overall (below the scheme's O(h^2) error).
    """
    hx, hy = grid.hx, grid.hy
    F1 = -dx(p, hx)
    F2 = -dy(p, hy)
    if params.mu != 0.0:
        F1 = F1 + params.mu * laplacian(v1, hx, hy)
        F2 = F2 + params.mu * laplacian(v2, hx, hy)
    if d2 != 0.0:
        lo, hi = grid.jb + 2, grid.ji - 1
        for F, v in ((F1, v1), (F2, v2)):
            F -= params.rho * d2 * hx**3 * fourth_diff_x(v, hx)
            ddy = fourth_diff_y(v, hy)
            F[:, lo:hi] -= params.rho * d2 * hy**3 * ddy[:, lo:hi]
    if forcing is not None:
        F1 = F1 + forcing[0]
        F2 = F2 + forcing[1]
    return F1, F2


@dataclass
class BCData:
    """Boundary data consumed by apply_velocity_bcs.

    All arrays have length nx.  Exactly one of iface_robin_H / iface_v1 /
    iface_dv1dy selects the tangential interface closure; iface_v2 is set
    only for Dirichlet (traditional) coupling of the normal velocity.
    """

    wall_v1: np.ndarray
    wall_v2: np.ndarray
    wall_dv1dy: np.ndarray | None = None   # slip wall: normal derivative of v1
    iface_robin_H: np.ndarray | None = None
    iface_v1: np.ndarray | None = None
    iface_dv1dy: np.ndarray | None = None  # symmetry closure for inviscid flow
    iface_v2: np.ndarray | None = None


def apply_velocity_bcs(grid, v1, v2, params, problem, bc):
    """Impose wall and interface conditions in place, including the ghost
    rows needed by the interior stencils and the traction evaluation."""
    hx, hy = grid.hx, grid.hy
    jb, ji = grid.jb, grid.ji

    if bc.iface_v2 is not None:
        v2[:, ji] = bc.iface_v2

    if problem.viscous:
        v1[:, jb] = bc.wall_v1
        v2[:, jb] = bc.wall_v2
        # continuity at the wall fixes the normal-velocity ghost
        v2[:, jb - 1] = v2[:, jb + 1] + 2.0 * hy * dx1(bc.wall_v1, hx)
        v1[:, jb - 1] = 3.0 * v1[:, jb] - 3.0 * v1[:, jb + 1] + v1[:, jb + 2]
    else:
        v2[:, jb] = bc.wall_v2
        dv1 = bc.wall_dv1dy if bc.wall_dv1dy is not None else 0.0
        v1[:, jb - 1] = v1[:, jb + 1] - 2.0 * hy * dv1
        v2[:, jb - 1] = 2.0 * v2[:, jb] - v2[:, jb + 1]

    if bc.iface_robin_H is not None:
        if params.mu == 0.0:
            raise ValueError("tangential Robin condition needs mu > 0")
        mu, beta = params.mu, params.rhosh / params.rho
        # mu*(D_y v1 + D_x v2) + mu*beta*lap v1 = H solved for the ghost row
        a = mu / (2.0 * hy) + mu * beta / hy**2
        xpart = dxx1(v1[:, ji], hx)
        known = mu * (-v1[:, ji - 1] / (2.0 * hy) + dx1(v2[:, ji], hx))
        known += mu * beta * (xpart + (v1[:, ji - 1] - 2.0 * v1[:, ji]) / hy**2)
        v1[:, ji + 1] = (bc.iface_robin_H - known) / a
    elif bc.iface_v1 is not None:
        v1[:, ji] = bc.iface_v1
        v1[:, ji + 1] = 3.0 * v1[:, ji] - 3.0 * v1[:, ji - 1] + v1[:, ji - 2]
    else:
        dv1 = bc.iface_dv1dy if bc.iface_dv1dy is not None else 0.0
        v1[:, ji + 1] = v1[:, ji - 1] + 2.0 * hy * dv1

    # continuity at the interface fixes the normal-velocity ghost
    v2[:, ji + 1] = v2[:, ji - 1] - 2.0 * hy * dx1(v1[:, ji], hx)


def compute_traction(grid, v1, v2, p, mu):
    """Fluid traction sigma*n on the interface (normal pointing up):
    components (mu*(v1_y + v2_x), -p + 2*mu*v2_y).  Shape (2, nx)."""
    hx, hy, ji = grid.hx, grid.hy, grid.ji
    dyv1 = (v1[:, ji + 1] - v1[:, ji - 1]) / (2.0 * hy)
    dyv2 = (v2[:, ji + 1] - v2[:, ji - 1]) / (2.0 * hy)
    t1 = mu * (dyv1 + dx1(v2[:, ji], hx))
    t2 = -p[:, ji] + 2.0 * mu * dyv2
    return np.stack([t1, t2])


def interface_laplacian_v2(grid, v1, v2):
    """Normal component of the discrete velocity Laplacian on the interface.

    Continuity substitutes the second normal derivative: lap v2 =
    v2_xx - (v1_y)_x, which needs only one ghost row and keeps the
    pressure boundary condition second-order accurate.
    """
    hx, hy, ji = grid.hx, grid.hy, grid.ji
    dyv1 = (v1[:, ji + 1] - v1[:, ji - 1]) / (2.0 * hy)
    return dxx1(v2[:, ji], hx) - dx1(dyv1, hx)


def divergence_field(grid, v1, v2):
    """Discrete divergence on the interior rows (zero elsewhere)."""
    div = divergence(v1, v2, grid.hx, grid.hy)
    out = np.zeros_like(div)
    out[:, grid.jb + 1:grid.ji] = div[:, grid.jb + 1:grid.ji]
    return out


class PressureSolver:
    """Prefactorized sparse solver for the pressure Poisson problem.

    top is "robin" (coefficient beta = rhosh/rho) or "neumann"; bottom is
    "neumann" or "dirichlet".  The all-Neumann case is singular up to a
    constant and is pinned by a zero-mean Lagrange multiplier.
    """

    def __init__(self, grid, top, bottom, beta=None):
        if top not in ("robin", "neumann"):
            raise ValueError(f"unknown top condition {top!r}")
        if bottom not in ("neumann", "dirichlet"):
            raise ValueError(f"unknown bottom condition {bottom!r}")
        if top == "robin" and (beta is None or beta <= 0):
            raise ValueError("Robin condition needs a positive coefficient")
        self.grid = grid
        self.top = top
        self.bottom = bottom
        self.beta = beta
        self.pinned = (top == "neumann" and bottom == "neumann")
        self._assemble()

    def _assemble(self):
        g = self.grid
        nx, ny = g.N1, g.N2 + 1
        hx2, hy2 = g.hx**2, g.hy**2
        n = nx * ny

        rows, cols, vals = [], [], []

        def add(i, j, ii, jj, v):
            rows.append(i * ny + j)
            cols.append((ii % nx) * ny + jj)
            vals.append(v)

        for i in range(nx):
            for j in range(ny):
                if j == 0 and self.bottom == "dirichlet":
                    add(i, j, i, j, 1.0)
                    continue
                add(i, j, i - 1, j, 1.0 / hx2)
                add(i, j, i + 1, j, 1.0 / hx2)
                diag = -2.0 / hx2
                if j == 0:  # Neumann wall, ghost eliminated
                    add(i, j, i, 1, 2.0 / hy2)
                    diag += -2.0 / hy2
                elif j == ny - 1:
                    add(i, j, i, j - 1, 2.0 / hy2)
                    if self.top == "robin":
                        diag += -2.0 / hy2 - 2.0 / (self.beta * g.hy)
                    else:
                        diag += -2.0 / hy2
                else:
                    add(i, j, i, j - 1, 1.0 / hy2)
                    add(i, j, i, j + 1, 1.0 / hy2)
                    diag += -2.0 / hy2
                add(i, j, i, j, diag)

        A = sp.coo_matrix((vals, (rows, cols)), shape=(n, n)).tocsr()
        if self.pinned:
            e = np.ones((n, 1))
            A = sp.bmat([[A, e], [e.T, None]], format="csc")
        else:
            A = A.tocsc()
        self.A = A
        self.A_norm = abs(A).sum(axis=1).max()
        self.lu = splu(A)

    def solve(self, interior_rhs, top_data, bottom_data):
        """Solve and return a ghost-inclusive pressure array.

        interior_rhs is a full-shape array read on rows jb..ji; top_data is
        the Robin right-hand side r or the Neumann derivative at the
        interface; bottom_data the wall Neumann derivative or Dirichlet
        value.
        """
        g = self.grid
        nx, ny = g.N1, g.N2 + 1
        b = np.array(interior_rhs[:, g.rows], dtype=float)

        if self.bottom == "dirichlet":
            b[:, 0] = bottom_data
        else:
            b[:, 0] += 2.0 * bottom_data / g.hy
        if self.top == "robin":
            b[:, -1] += -2.0 * top_data / (self.beta * g.hy)
        else:
            b[:, -1] += -2.0 * top_data / g.hy

        rhs = b.ravel()
        if self.pinned:
            rhs = np.concatenate([rhs, [0.0]])
        sol = self.lu.solve(rhs)
        res = np.abs(self.A @ sol - rhs).max()
        scale = self.A_norm * np.abs(sol).max() + np.abs(rhs).max()
        if not np.isfinite(res) or res > PRESSURE_RESIDUAL_TOL * max(scale, 1.0):
            raise PressureSolveError(
                f"pressure residual {res:.3e} exceeds tolerance "
                f"(scale {scale:.3e})")
        if self.pinned:
            sol = sol[:-1]

        p = g.alloc()
        p[:, g.rows] = sol.reshape(nx, ny)
        self.fill_ghosts(p, top_data, bottom_data)
        return p

    def fill_ghosts(self, p, top_data, bottom_data):
        g = self.grid
        hy, jb, ji = g.hy, g.jb, g.ji
        if self.top == "robin":
            p[:, ji + 1] = p[:, ji - 1] + (2.0 * hy / self.beta) * (
                top_data - p[:, ji])
        else:
            p[:, ji + 1] = p[:, ji - 1] + 2.0 * hy * top_data
        if self.bottom == "dirichlet":
            p[:, jb - 1] = 3.0 * p[:, jb] - 3.0 * p[:, jb + 1] + p[:, jb + 2]
        else:
            p[:, jb - 1] = p[:, jb + 1] - 2.0 * hy * bottom_data
        # outermost ghost rows: cubic extrapolation, never read by stencils
        p[:, ji + 2] = 4.0 * p[:, ji + 1] - 6.0 * p[:, ji] \
            + 4.0 * p[:, ji - 1] - p[:, ji - 2]
        p[:, jb - 2] = 4.0 * p[:, jb - 1] - 6.0 * p[:, jb] \
            + 4.0 * p[:, jb + 1] - p[:, jb + 2]


def dump_fields(path, grid, v1, v2, p, t):
    """Write the non-ghost fields as CSV with a one-line size header."""
    g = grid
    X, Y = g.mesh_interior()
    r = g.rows
    data = np.column_stack([X.ravel(), Y.ravel(), v1[:, r].ravel(),
                            v2[:, r].ravel(), p[:, r].ravel()])
    header = (f"nx={g.N1} ny={g.N2 + 1} hx={g.hx:.16g} hy={g.hy:.16g} "
              f"t={t:.16g}\nx,y,v1,v2,p")
    np.savetxt(path, data, delimiter=",", header=header)
