"""Fourier mode-stability theory for the inviscid model problem.

Closed-form added-mass coefficient, amplification polynomials for the
traditional and added-mass partitioned couplings, the two stability
theorems, and scalar mode evolution for cross-checking.
"""

from dataclasses import dataclass

import numpy as np

#: modulus tolerance when classifying roots relative to the unit circle
UNIT_TOL = 1e-12
#: roots closer than this are treated as a double root
SEP_TOL = 1e-8


class DegenerateModeError(ValueError):
    pass


def added_mass(kx, H, rho):
    """Added-mass coefficient rho*cosh(kx*H)/(kx*sinh(kx*H))."""
    if kx == 0:
        raise DegenerateModeError("added mass diverges for the mean mode kx=0")
    kx = abs(kx)
    return rho / (kx * np.tanh(kx * H))


def _weight(rhosh, Ma):
    """Frequency-reduction factor of the AMP coupling.

    Equals rhosh*kx*sinh/(rho*cosh + rhosh*kx*sinh) written in terms of the
    added-mass coefficient: 1/(1 + Ma/rhosh).
    """
    return 1.0 / (1.0 + Ma / rhosh)


def traditional_roots(rhosh, Lc, Ma, dt):
    """Roots of the cubic amplification polynomial of the traditional coupling:

        (rhosh/dt^2)(A-1)^2 A + Lc A^2 + (Ma/dt^2)(A-1)^2 = 0
    """
    if rhosh <= 0:
        raise DegenerateModeError("shell mass must be positive")
    if dt <= 0:
        raise ValueError("dt must be positive")
    r = rhosh / dt**2
    m = Ma / dt**2
    # expand in powers of A
    coeffs = [r, -2.0 * r + Lc + m, r - 2.0 * m, m]
    roots = np.roots(coeffs)
    return roots


def amp_roots(rhosh, Lc, Ma, dt):
    """Roots of the quadratic A^2 - 2(1 - b dt^2) A + 1 = 0 with
    b = Lc/(2*(rhosh + Ma)), for the added-mass partitioned coupling."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    b = Lc / (2.0 * (rhosh + Ma))
    c = 1.0 - b * dt**2
    roots = np.roots([1.0, -2.0 * c, 1.0])
    return roots


def von_neumann_check(roots):
    """Weak stability: all moduli <= 1 and any root on the unit circle simple."""
    roots = np.asarray(roots, dtype=complex)
    if not np.all(np.isfinite(roots)):
        return False
    mods = np.abs(roots)
    if mods.max() > 1.0 + UNIT_TOL:
        return False
    on_circle = np.flatnonzero(np.abs(mods - 1.0) <= 1e-10)
    for a in range(len(on_circle)):
        for b in range(a + 1, len(on_circle)):
            if abs(roots[on_circle[a]] - roots[on_circle[b]]) <= SEP_TOL:
                return False
    return True


@dataclass(frozen=True)
class StabilityResult:
    verdict: str           # "weakly stable" | "unstable" | "unconditionally unstable"
    dt_max: float          # largest stable step (inf when unbounded, 0 when none)
    max_modulus: float | None = None
    roots: tuple | None = None


def traditional_stability(rhosh, Lc, Ma, dt=None):
    """Closed-form stability of the traditional coupling: weakly stable iff
    Ma < rhosh and dt^2 < 4*(rhosh/Lc)*(1 - Ma/rhosh)."""
    if min(rhosh, Ma) <= 0 or Lc < 0:
        raise DegenerateModeError("theorem requires rhosh, Ma > 0 and Lc >= 0")
    if Lc == 0:
        raise DegenerateModeError("theorem hypotheses require Lc > 0")
    if Ma >= rhosh:
        return StabilityResult("unconditionally unstable", 0.0)
    dt_max = 2.0 * np.sqrt((rhosh - Ma) / Lc)
    if dt is None or dt < dt_max:
        return StabilityResult("weakly stable", dt_max)
    return StabilityResult("unstable", dt_max)


def amp_dt_max(rhosh, Lc, Ma):
    """Stability bound of the AMP coupling: dt < 2*sqrt((rhosh + Ma)/Lc)."""
    if Lc == 0:
        return np.inf
    return 2.0 * np.sqrt((rhosh + Ma) / Lc)


def amp_stability(rhosh, Lc, Ma, dt=None):
    dt_max = amp_dt_max(rhosh, Lc, Ma)
    if dt is None or dt < dt_max:
        return StabilityResult("weakly stable", dt_max)
    return StabilityResult("unstable", dt_max)


def mode_evolve(scheme, rhosh, Lc, Ma, dt, steps, seed):
    """Evolve the scalar interface-displacement recursion for one Fourier mode.

    scheme is "amp" (two history levels) or "traditional" (three).  seed
    supplies the initial history, oldest first.  Returns the full series
    including the seed values.
    """
    scheme = str(scheme).lower()
    if scheme == "amp":
        if len(seed) < 2:
            raise ValueError("AMP recursion needs 2 seed values")
        b = Lc / (2.0 * (rhosh + Ma))
        c = 2.0 * (1.0 - b * dt**2)
        eta = np.empty(steps + 2)
        eta[0], eta[1] = seed[0], seed[1]
        for n in range(1, steps + 1):
            eta[n + 1] = c * eta[n] - eta[n - 1]
        return eta
    if scheme == "traditional":
        if len(seed) < 3:
            raise ValueError("traditional recursion needs 3 seed values")
        eta = np.empty(steps + 3)
        eta[0], eta[1], eta[2] = seed[0], seed[1], seed[2]
        a = dt**2 * Lc / rhosh
        m = Ma / rhosh
        for n in range(2, steps + 2):
            eta[n + 1] = (2.0 * eta[n] - eta[n - 1] - a * eta[n]
                          - m * (eta[n] - 2.0 * eta[n - 1] + eta[n - 2]))
        return eta
    raise ValueError(f"unknown scheme {scheme!r}")


def amp_mode_amplitude(eta, rhosh, Lc, Ma, dt):
    """Per-step amplitude envelope of an AMP mode series.

    Decomposes consecutive pairs onto the two characteristic roots and
    returns |c1| at each step; constant when the scheme is non-dissipative.
    """
    b = Lc / (2.0 * (rhosh + Ma))
    c = 1.0 - b * dt**2
    if abs(c) >= 1.0:
        raise DegenerateModeError("mode is outside the oscillatory regime")
    A = c + 1j * np.sqrt(1.0 - c * c)
    eta = np.asarray(eta, dtype=float)
    c1 = (eta[1:] - np.conj(A) * eta[:-1]) / (A - np.conj(A))
    return np.abs(c1)


def poly_residual_scale(coeffs, roots):
    """Max |poly(root)| normalized by the coefficient magnitude."""
    coeffs = np.asarray(coeffs, dtype=complex)
    vals = np.polyval(coeffs, np.asarray(roots, dtype=complex))
    scale = np.abs(coeffs).max() * max(1.0, np.abs(roots).max()) ** (len(coeffs) - 1)
    return np.abs(vals).max() / scale


def stability_map_rows(deltas, kxs, dts, schemes, H=1.0, rho=1.0):
    """Rows (delta, kx, dt, scheme, maxmod, verdict) for the CLI stability map."""
    from .params import make_preset

    rows = []
    for delta in deltas:
        p = make_preset(delta)
        for kx in kxs:
            Ma = added_mass(kx, H, rho)
            Lc = p.shell_symbol(kx)
            for dt in dts:
                for scheme in schemes:
                    if scheme == "amp":
                        roots = amp_roots(p.rhosh, Lc, Ma, dt)
                        res = amp_stability(p.rhosh, Lc, Ma, dt)
                    else:
                        roots = traditional_roots(p.rhosh, Lc, Ma, dt)
                        res = traditional_stability(p.rhosh, Lc, Ma, dt)
                    rows.append((delta, kx, dt, scheme,
                                 float(np.abs(roots).max()), res.verdict))
    return rows
