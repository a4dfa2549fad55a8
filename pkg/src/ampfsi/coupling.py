"""Partitioned fluid-shell coupling: the added-mass partitioned (AMP)
predictor-corrector and the traditional Dirichlet-Neumann scheme.

One AMP step runs seven stages: shell leap-frog predictor; fluid momentum
predictor with the interface Robin closure; pressure solve with the Robin
condition; shell trapezoidal corrector; fluid trapezoidal corrector;
pressure re-solve; and a density-weighted projection that assigns a single
interface velocity to both subdomains.  The Robin condition embeds the
shell dynamics into the fluid boundary data, which is what removes the
added-mass instability of the traditional scheme.
"""

from dataclasses import dataclass

import numpy as np

from . import fluid as fl
from . import shell as sh
from .fluid import (BCData, FluidState, PressureSolver, apply_velocity_bcs,
                    compute_traction, divergence_field, dx1,
                    interface_laplacian_v2, momentum_rhs, update_slices)
from .params import Problem, Scheme
from .shell import ShellState, shell_correct, shell_operator, shell_predict


def projection_weight(params):
    """Density weight gamma = 1/(1 + rhosh/(rho*hf)) of the interface
    velocity projection; gamma -> 1 recovers the fluid velocity (heavy
    fluid), gamma -> 0 the shell velocity (heavy shell)."""
    return 1.0 / (1.0 + params.rhosh / (params.rho * params.hf))


def project_interface_velocity(vf, vs, gamma, offset=0.0):
    """Blend fluid and shell interface velocities.

    offset is the exact fluid-minus-shell mismatch of a manufactured
    solution; the projected pair reproduces it exactly:
    vf_new - vs_new = offset.  Returns (vf_new, vs_new).
    """
    vf_new = gamma * vf + (1.0 - gamma) * (vs + offset)
    vs_new = gamma * (vf - offset) + (1.0 - gamma) * vs
    return vf_new, vs_new


@dataclass
class StepReport:
    t: float
    fluid_norm: float
    shell_norm: float
    div_norm: float
    mismatch: float
    blew_up: bool


class Stepper:
    """Advances one coupled problem in time.

    driver supplies exact/manufactured fields, forcings and interface
    offsets (see the exact module); config is a RunConfig.
    """

    def __init__(self, cfg, grid, driver, dt):
        self.cfg = cfg
        self.grid = grid
        self.params = cfg.params
        self.problem = cfg.problem
        self.scheme = cfg.scheme
        self.driver = driver
        self.dt = float(dt)
        self.d2 = cfg.dissipation
        self.cd = cfg.cd
        self.beta = self.params.rhosh / self.params.rho
        self.gamma = projection_weight(self.params)
        self.unforced = bool(getattr(driver, "unforced", False))

        bottom = "dirichlet" if cfg.bottom_pressure_dirichlet else "neumann"
        top = "robin" if self.scheme is Scheme.AMP else "neumann"
        self.psolver = PressureSolver(grid, top, bottom, beta=self.beta)

        self.fluid = FluidState.zeros(grid)
        self.shell = ShellState.zeros(grid.N1)
        self._X, self._Y = grid.mesh()
        self.seed_exact()

    # ------------------------------------------------------------------
    def seed_exact(self, t0=0.0):
        """Initialize fields and multistep history from the driver's exact
        solution, including analytic ghost rows."""
        g, dr, dt = self.grid, self.driver, self.dt
        X, Y = self._X, self._Y
        x = g.x

        v1, v2, p = dr.fluid(X, Y, t0)
        self.fluid.v1, self.fluid.v2, self.fluid.p = v1, v2, p
        v1m, v2m, pm = dr.fluid(X, Y, t0 - dt)
        f_m = None if self.unforced else dr.momentum_forcing(X, Y, t0 - dt)
        F1m, F2m = momentum_rhs(g, v1m, v2m, pm, self.params, self.d2, f_m)
        self.fluid.F1_prev, self.fluid.F2_prev = F1m, F2m
        self.fluid.p_nm1 = pm
        _, _, self.fluid.p_nm2 = dr.fluid(X, Y, t0 - 2.0 * dt)
        self.fluid.t = t0

        u0, vb0 = dr.shell(x, t0)
        um, vbm = dr.shell(x, t0 - dt)
        self.shell.u, self.shell.v = u0, vb0
        self.shell.u_prev, self.shell.v_prev = um, vbm
        self.shell.t = t0

    # ------------------------------------------------------------------
    def _interface_bc(self, t, u_for_H=None, p_for_H=None, vbar=None):
        """Assemble BCData for the velocity update ending at time t.

        AMP supplies either the tangential Robin datum (from u_for_H and
        p_for_H) or a symmetry/Dirichlet closure; the traditional scheme
        supplies interface Dirichlet values from the shell velocity vbar.
        """
        g, dr, prm, prob = self.grid, self.driver, self.params, self.problem
        x = g.x
        nx = g.N1
        zeros = np.zeros(nx)

        if prob.viscous:
            w1, w2, _ = (zeros, zeros, None) if self.unforced \
                else dr.fluid(x, -prm.H, t)
            bc = BCData(wall_v1=np.asarray(w1) + zeros,
                        wall_v2=np.asarray(w2) + zeros)
        else:
            w2 = zeros if self.unforced else dr.fluid(x, -prm.H, t)[1]
            bc = BCData(wall_v1=zeros, wall_v2=np.asarray(w2) + zeros,
                        wall_dv1dy=dr.wall_dv1dy(x, t))

        if self.scheme is Scheme.TRADITIONAL:
            goff = np.zeros((2, nx)) if self.unforced \
                else dr.kinematic_offset(x, t)
            bc.iface_v2 = vbar[1] + goff[1]
            if prob is Problem.MP_V2:
                bc.iface_v1 = vbar[0] + goff[0]
            elif prob is Problem.MP_V1:
                bc.iface_v1 = zeros if self.unforced \
                    else dr.fluid(x, 0.0, t)[0]
            else:
                bc.iface_dv1dy = dr.interface_dv1dy(x, t)
            return bc

        if prob is Problem.MP_V2:
            H = self.beta * dx1(p_for_H[:, g.ji], g.hx) \
                + shell_operator(u_for_H, prm, g.hx)[0]
            if not self.unforced:
                H = H + dr.tangential_offset(x, t)
            bc.iface_robin_H = H
        elif prob is Problem.MP_V1:
            bc.iface_v1 = zeros if self.unforced else dr.fluid(x, 0.0, t)[0]
        else:
            bc.iface_dv1dy = dr.interface_dv1dy(x, t)
        return bc

    # ------------------------------------------------------------------
    def _pressure_data(self, t, v1, v2, u_for):
        """Interior right-hand side plus top/bottom boundary data for the
        pressure solve approximating p at time t."""
        g, dr, prm = self.grid, self.driver, self.params
        x = g.x
        hy, jb, ji = g.hy, g.jb, g.ji

        rhs = np.zeros(g.shape)
        if self.cd != 0.0:
            rhs += (self.cd * prm.rho / self.dt) * divergence_field(g, v1, v2)
        if not self.unforced:
            rhs += dr.poisson_forcing(self._X, self._Y, t)

        if self.scheme is Scheme.AMP:
            dyv2 = (v2[:, ji + 1] - v2[:, ji - 1]) / (2.0 * hy)
            top = 2.0 * prm.mu * dyv2 \
                + prm.mu * self.beta * interface_laplacian_v2(g, v1, v2) \
                - shell_operator(u_for, prm, g.hx)[1]
            if not self.unforced:
                top = top + dr.robin_offset(x, t)
        else:
            top = self._traditional_neumann(t, v1, v2)

        if self.cfg.bottom_pressure_dirichlet:
            bottom = np.zeros(g.N1) if self.unforced \
                else dr.fluid(x, -prm.H, t)[2]
        else:
            bottom = np.zeros(g.N1) if self.unforced \
                else dr.wall_dp_offset(x, t)
            if prm.mu != 0.0:
                lap_w = fl.dxx1(v2[:, jb], g.hx) + (
                    v2[:, jb + 1] - 2.0 * v2[:, jb] + v2[:, jb - 1]) / hy**2
                bottom = bottom + prm.mu * lap_w
        return rhs, top, bottom

    def _traditional_neumann(self, t, v1, v2):
        """Interface Neumann datum of the traditional scheme:
        p_y = -rho * (second time difference of the shell displacement)
        + mu * lap v2, the acceleration lagged by the partitioning."""
        g, dr, prm = self.grid, self.driver, self.params
        x = g.x
        accel = (self._u_new[1] - 2.0 * self._u_mid[1]
                 + self._u_old[1]) / self.dt**2
        top = -prm.rho * accel
        if prm.mu != 0.0:
            top = top + prm.mu * interface_laplacian_v2(g, v1, v2)
        if not self.unforced:
            f1, f2 = dr.momentum_forcing(x, 0.0, t)
            gdot = dr.kinematic_offset_dt(x, t)
            top = top + f2 - prm.rho * gdot[1]
        return top

    # ------------------------------------------------------------------
    def step(self):
        if self.scheme is Scheme.AMP:
            return self._amp_step()
        return self._traditional_step()

    def _amp_step(self):
        g, prm, prob, dr = self.grid, self.params, self.problem, self.driver
        flu, she, dt = self.fluid, self.shell, self.dt
        t0 = flu.t
        t1 = t0 + dt
        x = g.x
        X, Y = self._X, self._Y

        f_n = None if self.unforced else dr.momentum_forcing(X, Y, t0)
        fbar_n = None if self.unforced else dr.shell_forcing(x, t0)

        sigma_n = compute_traction(g, flu.v1, flu.v2, flu.p, prm.mu)

        # Stage I: shell leap-frog predictor
        u_p, v_p = shell_predict(she, sigma_n, dt, prm, g.hx, prob, fbar_n)

        # Stage II: fluid Adams-Bashforth predictor
        F1n, F2n = momentum_rhs(g, flu.v1, flu.v2, flu.p, prm, self.d2, f_n)
        s1, s2 = update_slices(g, prob)
        v1p, v2p = flu.v1.copy(), flu.v2.copy()
        c = dt / prm.rho
        v1p[:, s1] += c * (1.5 * F1n[:, s1] - 0.5 * flu.F1_prev[:, s1])
        v2p[:, s2] += c * (1.5 * F2n[:, s2] - 0.5 * flu.F2_prev[:, s2])
        p_guess = 3.0 * flu.p - 3.0 * flu.p_nm1 + flu.p_nm2
        bc = self._interface_bc(t1, u_for_H=u_p, p_for_H=p_guess)
        apply_velocity_bcs(g, v1p, v2p, prm, prob, bc)

        # Stage III: pressure with the Robin interface condition
        rhs, top, bottom = self._pressure_data(t1, v1p, v2p, u_p)
        p_p = self.psolver.solve(rhs, top, bottom)

        if self.cfg.corrector:
            sigma_p = compute_traction(g, v1p, v2p, p_p, prm.mu)
            fbar_p = None if self.unforced else dr.shell_forcing(x, t1)
            # Stage IV: shell trapezoidal corrector
            u_new, vbar_new = shell_correct(she, u_p, v_p, sigma_n, sigma_p,
                                            dt, prm, g.hx, prob,
                                            fbar_n, fbar_p)
            # Stage V: fluid trapezoidal corrector
            f_p = None if self.unforced else dr.momentum_forcing(X, Y, t1)
            F1p, F2p = momentum_rhs(g, v1p, v2p, p_p, prm, self.d2, f_p)
            v1n, v2n = flu.v1.copy(), flu.v2.copy()
            ch = dt / (2.0 * prm.rho)
            v1n[:, s1] += ch * (F1p[:, s1] + F1n[:, s1])
            v2n[:, s2] += ch * (F2p[:, s2] + F2n[:, s2])
            bc = self._interface_bc(t1, u_for_H=u_new, p_for_H=p_p)
            apply_velocity_bcs(g, v1n, v2n, prm, prob, bc)
            # Stage VI: pressure re-solve
            rhs, top, bottom = self._pressure_data(t1, v1n, v2n, u_new)
            p_new = self.psolver.solve(rhs, top, bottom)
        else:
            u_new, vbar_new = u_p, v_p
            v1n, v2n, p_new = v1p, v2p, p_p

        # Stage VII: interface velocity projection
        goff = np.zeros((2, g.N1)) if self.unforced \
            else dr.kinematic_offset(x, t1)
        comps = [(1, v2n)] + ([(0, v1n)] if prob is Problem.MP_V2 else [])
        for cidx, field in comps:
            vi, vs = project_interface_velocity(field[:, g.ji],
                                                vbar_new[cidx], self.gamma,
                                                goff[cidx])
            field[:, g.ji] = vi
            vbar_new[cidx] = vs
        apply_velocity_bcs(g, v1n, v2n, prm, prob, bc)

        mism = 0.0
        for cidx, field in comps:
            mism = max(mism, np.abs(field[:, g.ji] - vbar_new[cidx]
                                    - goff[cidx]).max())

        self._commit(v1n, v2n, p_new, F1n, F2n, u_new, vbar_new)
        return self._report(mism)

    def _traditional_step(self):
        g, prm, prob, dr = self.grid, self.params, self.problem, self.driver
        flu, she, dt = self.fluid, self.shell, self.dt
        t0 = flu.t
        t1 = t0 + dt
        x = g.x
        X, Y = self._X, self._Y

        f_n = None if self.unforced else dr.momentum_forcing(X, Y, t0)
        fbar_n = None if self.unforced else dr.shell_forcing(x, t0)

        sigma_n = compute_traction(g, flu.v1, flu.v2, flu.p, prm.mu)

        # shell leap-frog over the full step, traction lagged
        u_new, vbar_new = shell_predict(she, sigma_n, dt, prm, g.hx, prob,
                                        fbar_n)
        # stash levels for the lagged interface acceleration
        self._u_new = u_new
        self._u_mid = she.u
        self._u_old = she.u_prev

        F1n, F2n = momentum_rhs(g, flu.v1, flu.v2, flu.p, prm, self.d2, f_n)
        s1, s2 = update_slices(g, prob)
        v1p, v2p = flu.v1.copy(), flu.v2.copy()
        c = dt / prm.rho
        v1p[:, s1] += c * (1.5 * F1n[:, s1] - 0.5 * flu.F1_prev[:, s1])
        v2p[:, s2] += c * (1.5 * F2n[:, s2] - 0.5 * flu.F2_prev[:, s2])
        bc = self._interface_bc(t1, vbar=vbar_new)
        apply_velocity_bcs(g, v1p, v2p, prm, prob, bc)

        rhs, top, bottom = self._pressure_data(t1, v1p, v2p, u_new)
        p_p = self.psolver.solve(rhs, top, bottom)

        if self.cfg.corrector:
            f_p = None if self.unforced else dr.momentum_forcing(X, Y, t1)
            F1p, F2p = momentum_rhs(g, v1p, v2p, p_p, prm, self.d2, f_p)
            v1n, v2n = flu.v1.copy(), flu.v2.copy()
            ch = dt / (2.0 * prm.rho)
            v1n[:, s1] += ch * (F1p[:, s1] + F1n[:, s1])
            v2n[:, s2] += ch * (F2p[:, s2] + F2n[:, s2])
            apply_velocity_bcs(g, v1n, v2n, prm, prob, bc)
            rhs, top, bottom = self._pressure_data(t1, v1n, v2n, u_new)
            p_new = self.psolver.solve(rhs, top, bottom)
        else:
            v1n, v2n, p_new = v1p, v2p, p_p

        goff = np.zeros((2, g.N1)) if self.unforced \
            else dr.kinematic_offset(x, t1)
        mism = np.abs(v2n[:, g.ji] - vbar_new[1] - goff[1]).max()

        self._commit(v1n, v2n, p_new, F1n, F2n, u_new, vbar_new)
        return self._report(mism)

    # ------------------------------------------------------------------
    def _commit(self, v1n, v2n, p_new, F1n, F2n, u_new, vbar_new):
        flu, she, dt = self.fluid, self.shell, self.dt
        flu.F1_prev, flu.F2_prev = F1n, F2n
        flu.p_nm2 = flu.p_nm1
        flu.p_nm1 = flu.p
        flu.v1, flu.v2, flu.p = v1n, v2n, p_new
        flu.t += dt
        sh.advance(she, u_new, vbar_new, dt)

    def _report(self, mismatch):
        fn = self.fluid.max_norm()
        sn = self.shell.max_norm()
        dv = np.abs(divergence_field(self.grid, self.fluid.v1,
                                     self.fluid.v2)).max()
        bad = (not np.isfinite(fn)) or (not np.isfinite(sn)) \
            or max(fn, sn) > self.cfg.blowup_norm
        return StepReport(self.fluid.t, float(fn), float(sn), float(dv),
                          float(mismatch), bool(bad))


# ---------------------------------------------------------------------------
# consistency harness for the discrete Robin interface condition

def robin_condition_residual(grid, params, p, v2, u, trapezoid=None):
    """Residual of the discrete Robin interface condition

        p + beta*D_y p - 2*mu*D_y v2 - mu*beta*lap v2 + L_h(u)[normal]

    evaluated on ghost-consistent fields (all arrays ghost-inclusive).
    With trapezoid=(previous fields, dt) the residual of the
    time-averaged two-level form is returned instead.
    """
    hy, ji = grid.hy, grid.ji
    beta = params.rhosh / params.rho

    def res(p_, v2_, u_):
        dyp = (p_[:, ji + 1] - p_[:, ji - 1]) / (2.0 * hy)
        dyv2 = (v2_[:, ji + 1] - v2_[:, ji - 1]) / (2.0 * hy)
        lap2 = (fl.dxx1(v2_[:, ji], grid.hx)
                + (v2_[:, ji + 1] - 2.0 * v2_[:, ji] + v2_[:, ji - 1]) / hy**2)
        Lu = shell_operator(u_, params, grid.hx)[1]
        return (p_[:, ji] + beta * dyp - 2.0 * params.mu * dyv2
                - params.mu * beta * lap2 + Lu)

    r_new = res(p, v2, u)
    if trapezoid is None:
        return r_new
    (p_old, v2_old, u_old), _dt = trapezoid
    return 0.5 * (r_new + res(p_old, v2_old, u_old))
