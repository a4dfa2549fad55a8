"""Exact solutions: traveling surface waves for the three model problems and
a trigonometric manufactured solution with all forcing functions.

Traveling waves are genuine solutions of the unforced equations; the
manufactured solution satisfies the equations only after the forcing terms
returned here are added.  All field evaluators accept numpy arrays.
"""

import numpy as np

from .modes import added_mass
from .params import Problem


class RootFindError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# inviscid traveling wave (vertical shell motion, slip wall)

def mp_i1_dispersion(k, params):
    """Real frequency pair (+w, -w) of the inviscid surface wave."""
    if k == 0:
        raise ValueError("dispersion undefined for k = 0")
    Ma = added_mass(k, params.H, params.rho)
    w = np.sqrt((params.Kbar + k**2 * params.Tbar) / (params.rhosh + Ma))
    return w, -w


class TravelingWaveI1:
    """Exact inviscid traveling wave: cosh/sinh depth profiles riding on
    e^(i(kx - wt)); real parts are the physical fields."""

    unforced = True

    def __init__(self, params, k_mode=1, umax=0.1, branch=+1):
        self.params = params
        self.k = 2.0 * np.pi * k_mode / params.L
        self.umax = umax
        w_pos, w_neg = mp_i1_dispersion(self.k, params)
        self.omega = w_pos if branch >= 0 else w_neg

    def _phase(self, x, t):
        return np.exp(1j * (self.k * np.asarray(x) - self.omega * t))

    def fluid(self, x, y, t):
        k, w, H = self.k, self.omega, self.params.H
        y = np.asarray(y)
        sh = np.sinh(k * H)
        ph = self._phase(x, t)
        v1 = np.real(self.umax * w * np.cosh(k * (y + H)) / sh * ph)
        v2 = np.real(-1j * self.umax * w * np.sinh(k * (y + H)) / sh * ph)
        p = np.real(self.umax * self.params.rho * w**2
                    * np.cosh(k * (y + H)) / (k * sh) * ph)
        return v1, v2, p

    def shell(self, x, t):
        """Displacement and velocity, shape (2, nx); only the vertical
        component is nonzero."""
        ph = self._phase(x, t)
        eta = np.real(self.umax * ph)
        eta_t = np.real(-1j * self.omega * self.umax * ph)
        zeros = np.zeros_like(eta)
        return np.stack([zeros, eta]), np.stack([zeros, eta_t])

    def interface_dv1dy(self, x, t):
        """Normal derivative of the tangential velocity on the interface."""
        return self.umax * self.omega * self.k * np.real(self._phase(x, t))

    def wall_dv1dy(self, x, t):
        return np.zeros(np.size(x))

    # unforced problem
    def momentum_forcing(self, x, y, t):
        z = np.zeros(np.broadcast(np.asarray(x), np.asarray(y)).shape)
        return z, z.copy()

    def poisson_forcing(self, x, y, t):
        return np.zeros(np.broadcast(np.asarray(x), np.asarray(y)).shape)

    def shell_forcing(self, x, t):
        return np.zeros((2, np.size(x)))

    def kinematic_offset(self, x, t):
        return np.zeros((2, np.size(x)))

    def kinematic_offset_dt(self, x, t):
        return np.zeros((2, np.size(x)))

    def robin_offset(self, x, t):
        return np.zeros(np.size(x))

    def tangential_offset(self, x, t):
        return np.zeros(np.size(x))

    def wall_dp_offset(self, x, t):
        return np.zeros(np.size(x))


# ---------------------------------------------------------------------------
# viscous traveling waves (MP-V1 / MP-V2)

def _wave_scalars(omega, k, params):
    """alpha, G, xi and the tension-profile cosh/sinh; never overflows."""
    mu, rho = params.mu, params.rho
    alpha = np.sqrt(complex(k**2 - 1j * rho * omega / mu))
    G = params.Kbar + params.Tbar * k**2 - params.rhosh * omega**2
    xi = rho * omega**2 + 2j * omega * mu * k**2
    Ck, Sk = np.cosh(k * params.H), np.sinh(k * params.H)
    return alpha, G, xi, Ck, Sk


def _wave_constants(omega, k, params, theta):
    alpha, G, xi, Ck, Sk = _wave_scalars(omega, k, params)
    Ca, Sa = np.cosh(alpha * params.H), np.sinh(alpha * params.H)
    return alpha, G, xi, Ck, Sk, Ca, Sa


def assemble_dispersion_matrix(omega, k, params, theta):
    """4x4 complex matrix whose null vector gives the depth-profile
    coefficients (A_f, B_f, C_f, D_f); rows 1-2 are the no-slip wall, rows
    3-4 the interface force balance and kinematics."""
    if params.mu <= 0:
        raise ValueError("viscous wave requires mu > 0")
    mu = params.mu
    alpha, G, xi, Ck, Sk, Ca, Sa = _wave_constants(omega, k, params, theta)
    if G == 0:
        raise ZeroDivisionError("shell resonance: K + T k^2 = rhosh w^2")
    M = np.array([
        [-Sk, 0.0, -Sa, 0.0],
        [k * Ck, k, alpha * Ca, alpha],
        [xi, -Sk * G * k + xi * Ck, 2j * omega * mu * k * alpha,
         -Sa * G * k + 2j * omega * mu * k * alpha * Ca],
        [k, k * Ck - 2j * omega * mu * theta * k**2 * Sk / G, alpha,
         alpha * Ca - 1j * omega * mu * theta * (alpha**2 + k**2) * Sa / G],
    ], dtype=complex)
    return M


def dispersion_det(omega, k, params, theta):
    """Determinant of the dispersion matrix, scaled to O(1) away from roots.

    Columns carrying the boundary-layer profiles are rescaled by exp(-alpha*H)
    so the evaluation stays finite even for very thin layers (small mu);
    column scaling does not move the roots.
    """
    mu = params.mu
    alpha, G, xi, Ck, Sk = _wave_scalars(omega, k, params)
    if alpha.real < 0:
        alpha = -alpha
    H = params.H
    E = np.exp(-alpha * H)
    ca = 0.5 * (1.0 + E * E)   # cosh(alpha H) * exp(-alpha H)
    sa = 0.5 * (1.0 - E * E)   # sinh(alpha H) * exp(-alpha H)
    M = np.array([
        [-Sk, 0.0, -sa, 0.0],
        [k * Ck, k, alpha * ca, alpha * E],
        [xi, -Sk * G * k + xi * Ck, 2j * omega * mu * k * alpha * E,
         -sa * G * k + 2j * omega * mu * k * alpha * ca],
        [k, k * Ck - 2j * omega * mu * theta * k**2 * Sk / G, alpha * E,
         alpha * ca - 1j * omega * mu * theta * (alpha**2 + k**2) * sa / G],
    ], dtype=complex)
    scale = np.prod(np.linalg.norm(M, axis=1))
    if not np.isfinite(scale) or scale == 0:
        return np.inf
    return np.linalg.det(M) / scale


def _muller(f, z0, tol=1e-13, maxit=100):
    """Muller's method with three automatically seeded points."""
    h = 1e-3 * max(1.0, abs(z0))
    zs = [z0 + h, z0 - h, z0]
    fs = [f(z) for z in zs]
    for _ in range(maxit):
        z0_, z1, z2 = zs[-3], zs[-2], zs[-1]
        f0, f1, f2 = fs[-3], fs[-2], fs[-1]
        q = (z2 - z1) / (z1 - z0_)
        a = q * f2 - q * (1 + q) * f1 + q**2 * f0
        b = (2 * q + 1) * f2 - (1 + q) ** 2 * f1 + q**2 * f0
        c = (1 + q) * f2
        disc = np.sqrt(complex(b**2 - 4 * a * c))
        den = b + disc if abs(b + disc) > abs(b - disc) else b - disc
        if den == 0:
            raise RootFindError("Muller iteration stalled (zero denominator)")
        z3 = z2 - (z2 - z1) * 2 * c / den
        zs.append(z3)
        fs.append(f(z3))
        if abs(z3 - z2) <= tol * max(1.0, abs(z3)) or abs(fs[-1]) < 1e-15:
            return z3
    raise RootFindError(
        f"no convergence in {maxit} iterations; last iterates "
        f"{[complex(z) for z in zs[-3:]]}")


def find_omega(k, params, theta, guess=None, tol=1e-13):
    """Complex frequency root of the viscous dispersion relation.

    Uses a continuation in viscosity from the inviscid frequency when no
    guess is given, since the root can wander far from the inviscid value
    for light shells.  Selects the branch with Re > 0 (rightward wave) and
    Im <= 0 (decay).
    """
    if params.mu <= 0:
        raise ValueError("viscous dispersion requires mu > 0")
    if guess is not None:
        w = _muller(lambda z: dispersion_det(z, k, params, theta),
                    complex(guess), tol=tol)
    else:
        w = _continuation_root(k, params, theta, tol)
    if w.real < 0:
        w = -np.conj(w)  # mirror branch: det is conjugate-symmetric
    if w.imag > 1e-8:
        raise RootFindError(f"found growing root {w}; expected decay")
    res = abs(dispersion_det(w, k, params, theta))
    if res > 1e-10:
        raise RootFindError(f"root residual {res:.2e} too large at {w}")
    return w


def _continuation_root(k, params, theta, tol):
    """Track the surface-wave root from small viscosity up to params.mu."""
    from dataclasses import replace

    mu_targets = np.geomspace(1e-4 * params.mu if params.mu > 1e-4 else params.mu,
                              params.mu, 40)
    w0, _ = mp_i1_dispersion(k, params)
    w = complex(w0, -1e-3)
    prev = None
    for mu in mu_targets:
        p_mu = replace(params, mu=float(mu))
        guess = w if prev is None else 2 * w - prev  # linear extrapolation
        try:
            w_new = _muller(lambda z: dispersion_det(z, k, p_mu, theta),
                            guess, tol=tol)
        except RootFindError:
            w_new = _muller(lambda z: dispersion_det(z, k, p_mu, theta),
                            w, tol=tol, maxit=200)
        prev, w = w, w_new
    return w


def tw_coefficients(omega, k, params, theta, umax):
    """Depth-profile coefficients (A_f, B_f, C_f, D_f) and shell amplitudes
    (u1_hat, u2_hat), normalized so the interface displacement modulus at
    x=0, t=0 equals umax."""
    M = assemble_dispersion_matrix(omega, k, params, theta)
    sub = M[:3, :3]
    rhs = -M[:3, 3]
    try:
        abc = np.linalg.solve(sub, rhs)
    except np.linalg.LinAlgError:
        raise RootFindError("degenerate 3x3 block at dispersion root") from None
    coeffs = np.append(abc, 1.0)  # D_f = 1 before normalization

    # The real displacement Re(e^{i k x} u_hat) traces an ellipse as x
    # varies; scale to make its semi-major axis umax and rotate the phase
    # so the maximum is attained at x = 0, t = 0.
    u1, u2 = _shell_amplitudes(coeffs, omega, k, params, theta)
    ar = np.array([u1.real, u2.real])
    ai = np.array([u1.imag, u2.imag])
    Q = np.array([[ar @ ar, -ar @ ai], [-ar @ ai, ai @ ai]])
    lam, vec = np.linalg.eigh(Q)
    amp = np.sqrt(lam[-1])
    if amp == 0:
        raise RootFindError("zero shell displacement at dispersion root")
    cpsi, spsi = vec[:, -1]
    coeffs *= (cpsi + 1j * spsi) * umax / amp
    u1, u2 = _shell_amplitudes(coeffs, omega, k, params, theta)
    return coeffs, (u1, u2)


def _shell_amplitudes(coeffs, omega, k, params, theta):
    mu = params.mu
    Af, Bf, Cf, Df = coeffs
    alpha, G, xi, Ck, Sk, Ca, Sa = _wave_constants(omega, k, params, theta)
    u1 = -(mu * theta / G) * ((1j / k) * (Bf * k**2 * Sk + Df * alpha**2 * Sa)
                              + 1j * k * (Bf * Sk + Df * Sa))
    u2 = (1.0 / G) * ((1j * params.rho * omega / k) * (Af + Bf * Ck)
                      - 2 * mu * (Af * k + Bf * k * Ck + Cf * alpha
                                  + Df * alpha * Ca))
    return u1, u2


class TravelingWaveViscous:
    """Exact viscous traveling wave for MP-V1 (theta=0) or MP-V2 (theta=1)."""

    unforced = True

    def __init__(self, params, theta, k_mode=1, umax=0.1, omega=None,
                 guess=None):
        self.params = params
        self.theta = theta
        self.k = 2.0 * np.pi * k_mode / params.L
        self.umax = umax
        if omega is None:
            omega = find_omega(self.k, params, theta, guess=guess)
        self.omega = complex(omega)
        self.coeffs, self.u_hat = tw_coefficients(self.omega, self.k, params,
                                                  theta, umax)
        (self.alpha, self.G, self.xi, self.Ck, self.Sk, self.Ca,
         self.Sa) = _wave_constants(self.omega, self.k, params, theta)

    def _phase(self, x, t):
        return np.exp(1j * (self.k * np.asarray(x) - self.omega * t))

    def fluid(self, x, y, t):
        k, a = self.k, self.alpha
        H = self.params.H
        Af, Bf, Cf, Df = self.coeffs
        y = np.asarray(y)
        ph = self._phase(x, t)
        v1 = (1j / k) * (Af * k * np.cosh(k * y) + Bf * k * np.cosh(k * (y + H))
                         + Cf * a * np.cosh(a * y) + Df * a * np.cosh(a * (y + H)))
        v2 = (Af * np.sinh(k * y) + Bf * np.sinh(k * (y + H))
              + Cf * np.sinh(a * y) + Df * np.sinh(a * (y + H)))
        p = (1j * self.params.rho * self.omega / k) * (
            Af * np.cosh(k * y) + Bf * np.cosh(k * (y + H)))
        return np.real(v1 * ph), np.real(v2 * ph), np.real(p * ph)

    def shell(self, x, t):
        ph = self._phase(x, t)
        u1, u2 = self.u_hat
        u = np.stack([np.real(u1 * ph), np.real(u2 * ph)])
        v = np.stack([np.real(-1j * self.omega * u1 * ph),
                      np.real(-1j * self.omega * u2 * ph)])
        return u, v

    def nullspace_residual(self):
        """Relative residual of M @ coeffs at the stored root."""
        M = assemble_dispersion_matrix(self.omega, self.k, self.params,
                                       self.theta)
        r = M @ self.coeffs
        return np.linalg.norm(r) / (np.linalg.norm(M, ord="fro")
                                    * np.linalg.norm(self.coeffs))

    momentum_forcing = TravelingWaveI1.momentum_forcing
    poisson_forcing = TravelingWaveI1.poisson_forcing
    shell_forcing = TravelingWaveI1.shell_forcing
    kinematic_offset = TravelingWaveI1.kinematic_offset
    kinematic_offset_dt = TravelingWaveI1.kinematic_offset_dt
    robin_offset = TravelingWaveI1.robin_offset
    tangential_offset = TravelingWaveI1.tangential_offset
    wall_dp_offset = TravelingWaveI1.wall_dp_offset
    wall_dv1dy = TravelingWaveI1.wall_dv1dy

    def interface_dv1dy(self, x, t):
        k, a = self.k, self.alpha
        H = self.params.H
        Af, Bf, Cf, Df = self.coeffs
        d = (1j / k) * (Af * k**2 * np.sinh(0.0) + Bf * k**2 * np.sinh(k * H)
                        + Cf * a**2 * np.sinh(0.0) + Df * a**2 * np.sinh(a * H))
        return np.real(d * self._phase(x, t))


# ---------------------------------------------------------------------------
# manufactured solution

class MmsSolution:
    """Trigonometric manufactured solution with analytic forcing functions.

    The fluid fields are divergence-free by construction; the shell is a
    standing wave.  Vertical-only problems force the horizontal shell
    amplitude to zero.
    """

    unforced = False

    def __init__(self, params, problem=Problem.MP_V2, fx=2.0, ft=2.0,
                 abar=0.1, bbar=0.1):
        self.params = params
        self.problem = problem
        self.fx = fx
        self.ft = ft
        self.a = fx * np.pi
        self.b = ft * np.pi
        self.abar = abar if problem is Problem.MP_V2 else 0.0
        self.bbar = bbar
        # wave speed from tension and mass per area (the shell density never
        # appears on its own in this parameterization)
        self.c = np.sqrt(params.Tbar / params.rhosh)

    # fluid fields -------------------------------------------------------
    def fluid(self, x, y, t):
        a, b = self.a, self.b
        x = np.asarray(x)
        y = np.asarray(y)
        ct = np.cos(b * t)
        v1 = 0.5 * np.cos(a * x) * np.cos(a * y) * ct
        v2 = 0.5 * np.sin(a * x) * np.sin(a * y) * ct
        p = np.cos(a * x) * np.cos(a * y) * ct
        return v1, v2, p

    def fluid_dt(self, x, y, t):
        a, b = self.a, self.b
        st = -b * np.sin(b * t)
        v1t = 0.5 * np.cos(a * np.asarray(x)) * np.cos(a * np.asarray(y)) * st
        v2t = 0.5 * np.sin(a * np.asarray(x)) * np.sin(a * np.asarray(y)) * st
        return v1t, v2t

    # shell fields -------------------------------------------------------
    def shell(self, x, t):
        a, c = self.a, self.c
        x = np.asarray(x)
        s = np.sin(a * x)
        u = np.stack([self.abar * s * np.cos(a * c * t),
                      self.bbar * s * np.cos(a * c * t)])
        v = np.stack([-self.abar * a * c * s * np.sin(a * c * t),
                      -self.bbar * a * c * s * np.sin(a * c * t)])
        return u, v

    def shell_dtt(self, x, t):
        a, c = self.a, self.c
        s = np.sin(a * np.asarray(x))
        f = -(a * c) ** 2 * np.cos(a * c * t)
        return np.stack([self.abar * s * f, self.bbar * s * f])

    def shell_restoring(self, x, t):
        """Analytic value of the shell restoring operator on the exact
        displacement."""
        u, _ = self.shell(x, t)
        p = self.params
        sym = p.Kbar + p.Tbar * self.a**2 + p.Bbar * self.a**4
        return -sym * u

    # forcings -----------------------------------------------------------
    def momentum_forcing(self, x, y, t):
        """Body force making the exact fields satisfy the momentum equation."""
        a, b = self.a, self.b
        p = self.params
        x = np.asarray(x)
        y = np.asarray(y)
        ct, st = np.cos(b * t), np.sin(b * t)
        v1 = 0.5 * np.cos(a * x) * np.cos(a * y)
        v2 = 0.5 * np.sin(a * x) * np.sin(a * y)
        px = -a * np.sin(a * x) * np.cos(a * y) * ct
        py = -a * np.cos(a * x) * np.sin(a * y) * ct
        f1 = -p.rho * b * v1 * st + px + 2 * p.mu * a**2 * v1 * ct
        f2 = -p.rho * b * v2 * st + py + 2 * p.mu * a**2 * v2 * ct
        return f1, f2

    def poisson_forcing(self, x, y, t):
        """Laplacian of the exact pressure (equals div of the body force)."""
        _, _, pr = self.fluid(x, y, t)
        return -2 * self.a**2 * pr

    def traction(self, x, t):
        """Exact fluid traction on the interface (components of sigma.n)."""
        a, b = self.a, self.b
        mu = self.params.mu
        x = np.asarray(x)
        ct = np.cos(b * t)
        # at y=0: dv1/dy = 0, dv2/dx = 0, dv2/dy = a/2 sin(ax) cos(bt)
        t1 = np.zeros_like(x, dtype=float)
        t2 = -np.cos(a * x) * ct + mu * a * np.sin(a * x) * ct
        return np.stack([t1, t2])

    def shell_forcing(self, x, t):
        """Forcing for the shell momentum equation (per component)."""
        p = self.params
        f = p.rhosh * self.shell_dtt(x, t) - self.shell_restoring(x, t) \
            + self.traction(x, t)
        if self.problem is not Problem.MP_V2:
            f[0] = 0.0
        return f

    def kinematic_offset(self, x, t):
        """Mismatch g = v_fluid(interface) - d/dt u_shell for the exact
        solution; zero for an unforced problem."""
        v1, v2, _ = self.fluid(x, 0.0, t)
        _, vs = self.shell(x, t)
        return np.stack([v1, v2]) - vs

    def kinematic_offset_dt(self, x, t):
        v1t, v2t = self.fluid_dt(x, 0.0, t)
        return np.stack([v1t, v2t]) - self.shell_dtt(x, t)

    def interface_dv1dy(self, x, t):
        """d(v1)/dy on the interface (zero: cos(a*y) is flat at y=0)."""
        return np.zeros(np.size(x))

    def wall_dv1dy(self, x, t):
        a = self.a
        return -0.5 * a * np.cos(a * np.asarray(x)) * np.sin(-a * self.params.H) \
            * np.cos(self.b * t)

    # interface-condition offsets ---------------------------------------
    def robin_offset(self, x, t):
        """Extra right-hand side of the pressure Robin condition caused by
        the forcing: (rhosh/rho)*f2 - fbar2 - rhosh*g2'."""
        p = self.params
        _, f2 = self.momentum_forcing(x, 0.0, t)
        fbar = self.shell_forcing(x, t)
        gdot = self.kinematic_offset_dt(x, t)
        return (p.rhosh / p.rho) * f2 - fbar[1] - p.rhosh * gdot[1]

    def tangential_offset(self, x, t):
        """Extra right-hand side of the tangential interface condition:
        fbar1 + rhosh*g1' - (rhosh/rho)*f1."""
        p = self.params
        f1, _ = self.momentum_forcing(x, 0.0, t)
        fbar = self.shell_forcing(x, t)
        gdot = self.kinematic_offset_dt(x, t)
        return fbar[0] + p.rhosh * gdot[0] - (p.rhosh / p.rho) * f1

    def wall_dp_offset(self, x, t):
        """p_y - mu*lap(v2) evaluated at the wall; added to the discrete
        viscous term to form the Neumann pressure datum there."""
        a = self.a
        p = self.params
        x = np.asarray(x)
        ct = np.cos(self.b * t)
        py = -a * np.cos(a * x) * np.sin(-a * p.H) * ct
        _, v2w, _ = self.fluid(x, -p.H, t)
        return py - p.mu * (-2.0 * a**2 * v2w)
