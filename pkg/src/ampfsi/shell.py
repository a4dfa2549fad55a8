"""Discrete shell model: periodic restoring operator and the leap-frog
predictor / trapezoidal corrector used by the partitioned time stepping.

Shell fields are arrays of shape (2, nx): component 0 is the tangential
displacement/velocity, component 1 the normal one.  Problems without
tangential motion keep component 0 identically zero via a mask.
"""

from dataclasses import dataclass, field

import numpy as np

from ._core import shell_restoring
from .params import Problem


def component_mask(problem):
    """Active shell components: (tangential, normal)."""
    return (problem.theta == 1, True)


def shell_operator(u, params, h):
    """Restoring operator -K*u + T*u_ss - B*u_ssss on periodic nodes.

    u has shape (..., nx); centered second differences, the fourth
    difference as the composed second difference.
    """
    return shell_restoring(np.asarray(u, dtype=float),
                           params.Kbar, params.Tbar, params.Bbar, h)


@dataclass
class ShellState:
    """Shell displacement/velocity at the current and previous time level."""

    u: np.ndarray
    v: np.ndarray
    u_prev: np.ndarray
    v_prev: np.ndarray
    t: float = 0.0

    @classmethod
    def zeros(cls, nx, t=0.0):
        return cls(np.zeros((2, nx)), np.zeros((2, nx)),
                   np.zeros((2, nx)), np.zeros((2, nx)), t)

    def copy(self):
        return ShellState(self.u.copy(), self.v.copy(),
                          self.u_prev.copy(), self.v_prev.copy(), self.t)

    def max_norm(self):
        return max(np.abs(self.u).max(), np.abs(self.v).max())


def _masked(arr, problem):
    if problem.theta == 0:
        arr = arr.copy()
        arr[0] = 0.0
    return arr


def shell_predict(state, traction, dt, params, h, problem, forcing=None):
    """Leap-frog predictor over one step (centered at the current level):

        u_p = u_prev + 2*dt*v
        v_p = v_prev + (2*dt/rhosh)*(L_h(u) - traction + forcing)

    traction is sigma*n evaluated from the fluid at the current level,
    shape (2, nx).  Returns (u_p, v_p).
    """
    rhs = shell_operator(state.u, params, h) - traction
    if forcing is not None:
        rhs = rhs + forcing
    u_p = state.u_prev + 2.0 * dt * state.v
    v_p = state.v_prev + (2.0 * dt / params.rhosh) * rhs
    return _masked(u_p, problem), _masked(v_p, problem)


def shell_correct(state, u_p, v_p, traction_n, traction_p, dt, params, h,
                  problem, forcing_n=None, forcing_p=None):
    """Trapezoidal corrector using midpoint averages of the predicted state:

        u_new = u + (dt/2)*(v_p + v)
        v_new = v + (dt/rhosh)*(L_h((u_p + u)/2) - (tr_p + tr_n)/2 + f_avg)

    Returns (u_new, v_new).
    """
    u_mid = 0.5 * (u_p + state.u)
    tr_mid = 0.5 * (traction_p + traction_n)
    rhs = shell_operator(u_mid, params, h) - tr_mid
    if forcing_n is not None or forcing_p is not None:
        f_n = 0.0 if forcing_n is None else forcing_n
        f_p = 0.0 if forcing_p is None else forcing_p
        rhs = rhs + 0.5 * (f_n + f_p)
    u_new = state.u + 0.5 * dt * (v_p + state.v)
    v_new = state.v + (dt / params.rhosh) * rhs
    return _masked(u_new, problem), _masked(v_new, problem)


def advance(state, u_new, v_new, dt):
    """Shift history: current level becomes previous, new becomes current."""
    state.u_prev, state.v_prev = state.u, state.v
    state.u, state.v = u_new, v_new
    state.t += dt
