"""Verification harness: run a case against its exact solution, measure
errors, fit convergence rates, and compare coupling schemes.

Exit-code conventions for the CLI: 0 success, 2 blow-up detected,
3 convergence-rate check failed, 4 configuration/setup error.
"""

import csv
import os
from dataclasses import dataclass, field

import numpy as np

from . import exact, modes
from .coupling import Stepper
from .params import Problem, RunConfig, Scheme, build_grid

EXIT_OK = 0
EXIT_BLOWUP = 2
EXIT_RATE = 3
EXIT_CONFIG = 4


def make_driver(cfg):
    """Exact-solution driver for a RunConfig."""
    if cfg.solution == "mms":
        return exact.MmsSolution(cfg.params, cfg.problem, fx=cfg.fx,
                                 ft=cfg.ft, abar=cfg.abar, bbar=cfg.bbar)
    if cfg.problem is Problem.MP_I1:
        return exact.TravelingWaveI1(cfg.params, k_mode=cfg.k_mode,
                                     umax=cfg.umax)
    return exact.TravelingWaveViscous(cfg.params, cfg.problem.theta,
                                      k_mode=cfg.k_mode, umax=cfg.umax)


def choose_dt(cfg, grid, match_final=True):
    """Time step: ct*h capped by the viscous/dissipation explicit-stability
    guard and by the worst discrete-mode stability bound of the scheme.

    A user-specified cfg.dt is honored as given.
    """
    if cfg.dt is not None:
        return cfg.dt
    prm = cfg.params
    h = min(grid.hx, grid.hy)
    dt = cfg.ct * h

    lam = 0.0
    if prm.mu > 0:
        lam += 4.0 * prm.mu / prm.rho * (1.0 / grid.hx**2 + 1.0 / grid.hy**2)
    d2 = cfg.dissipation
    if d2 > 0:
        lam += 16.0 * d2 * (1.0 / grid.hx + 1.0 / grid.hy)
    if lam > 0:
        dt = min(dt, 0.8 / lam)

    dt = min(dt, 0.9 * _mode_dt_bound(cfg, grid))

    if match_final:
        n = max(1, int(np.ceil(cfg.t_final / dt - 1e-12)))
        dt = cfg.t_final / n
    return dt


def _mode_dt_bound(cfg, grid):
    """Smallest stability bound over the resolvable Fourier modes, using
    the effective discrete wavenumber of the centered second difference."""
    prm = cfg.params
    bound = np.inf
    for m in range(1, grid.N1 // 2 + 1):
        kx_eff = (2.0 / grid.hx) * np.sin(np.pi * m / grid.N1)
        if kx_eff == 0:
            continue
        Lc = prm.shell_symbol(kx_eff)
        if Lc == 0:
            continue
        Ma = modes.added_mass(2.0 * np.pi * m / prm.L, prm.H, prm.rho)
        if cfg.scheme is Scheme.AMP:
            b = modes.amp_dt_max(prm.rhosh, Lc, Ma)
        else:
            if Ma >= prm.rhosh:
                continue  # unconditionally unstable mode; nothing to respect
            b = 2.0 * np.sqrt((prm.rhosh - Ma) / Lc)
        bound = min(bound, b)
    return bound


@dataclass
class RunResult:
    cfg: RunConfig
    dt: float
    steps: int
    errors: dict
    blew_up: bool
    blowup_step: int | None
    final_report: object
    history: list = field(default_factory=list)

    @property
    def h(self):
        return self.cfg.params.L / self.cfg.N


def measure_errors(stepper, driver):
    """Max-norm errors of all fields against the exact solution at the
    current time, over the non-ghost rows."""
    g = stepper.grid
    t = stepper.fluid.t
    X, Y = g.mesh_interior()
    v1e, v2e, pe = driver.fluid(X, Y, t)
    ue, ve = driver.shell(g.x, t)
    r = g.rows
    return {
        "v1": float(np.abs(stepper.fluid.v1[:, r] - v1e).max()),
        "v2": float(np.abs(stepper.fluid.v2[:, r] - v2e).max()),
        "p": float(np.abs(stepper.fluid.p[:, r] - pe).max()),
        "u": float(np.abs(stepper.shell.u - ue).max()),
        "v": float(np.abs(stepper.shell.v - ve).max()),
    }


def run(cfg, max_steps=None, keep_history=False, driver=None):
    """Run one case to t_final (or max_steps) and measure final errors."""
    grid = build_grid(cfg.params, cfg.N)
    if driver is None:
        driver = make_driver(cfg)
    dt = choose_dt(cfg, grid, match_final=(max_steps is None))
    stepper = Stepper(cfg, grid, driver, dt)

    if max_steps is None:
        nsteps = int(round(cfg.t_final / dt))
    else:
        nsteps = max_steps
    history = []
    report = None
    blew_up = False
    blowup_step = None
    for n in range(nsteps):
        report = stepper.step()
        if keep_history:
            history.append(report)
        if report.blew_up:
            blew_up = True
            blowup_step = n + 1
            break

    if blew_up:
        errors = {k: float("inf") for k in ("v1", "v2", "p", "u", "v")}
    else:
        errors = measure_errors(stepper, driver)

    if cfg.dump_fields and cfg.out_dir:
        os.makedirs(cfg.out_dir, exist_ok=True)
        from .fluid import dump_fields
        dump_fields(os.path.join(cfg.out_dir, "fields.csv"), grid,
                    stepper.fluid.v1, stepper.fluid.v2, stepper.fluid.p,
                    stepper.fluid.t)
    return RunResult(cfg, dt, nsteps if not blew_up else blowup_step,
                     errors, blew_up, blowup_step, report, history)


def fit_rate(hs, errs):
    """Least-squares slope of log(err) against log(h)."""
    hs = np.asarray(hs, dtype=float)
    errs = np.asarray(errs, dtype=float)
    if np.any(errs <= 0) or not np.all(np.isfinite(errs)):
        return float("nan")
    return float(np.polyfit(np.log(hs), np.log(errs), 1)[0])


@dataclass
class ConvergenceResult:
    Ns: list
    results: list           # RunResult per N
    rates: dict             # field -> fitted rate

    def table(self):
        fields = ("v1", "v2", "p", "u", "v")
        lines = ["N      " + "".join(f"{f:>12}" for f in fields)]
        for N, r in zip(self.Ns, self.results):
            lines.append(f"{N:<7d}" + "".join(
                f"{r.errors[f]:>12.3e}" for f in fields))
        lines.append("rate   " + "".join(
            f"{self.rates[f]:>12.2f}" for f in fields))
        return "\n".join(lines)

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            fields = ("v1", "v2", "p", "u", "v")
            w.writerow(["N", "h", "dt"] + list(fields))
            for N, r in zip(self.Ns, self.results):
                w.writerow([N, r.h, r.dt] + [r.errors[f] for f in fields])
            w.writerow(["rate", "", ""] + [self.rates[f] for f in fields])


def converge(cfg, Ns=(20, 40, 80), fields=None):
    """Grid-refinement study; returns per-grid errors and fitted rates."""
    from dataclasses import replace

    results = []
    for N in Ns:
        results.append(run(replace(cfg, N=N)))
    hs = [r.h for r in results]
    keys = fields or ("v1", "v2", "p", "u", "v")
    rates = {f: fit_rate(hs, [r.errors[f] for r in results]) for f in keys}
    return ConvergenceResult(list(Ns), results, rates)


def active_error_fields(problem):
    """Fields carrying the solution for a problem (u1 is identically zero
    except for MP-V2, so its error is excluded from rate fits)."""
    return ("v1", "v2", "p", "u", "v")


def compare_schemes(cfg, max_steps=None):
    """Run the same case under both couplings; returns dict of RunResult."""
    from dataclasses import replace

    out = {}
    for scheme in (Scheme.AMP, Scheme.TRADITIONAL):
        out[scheme.value] = run(replace(cfg, scheme=scheme),
                                max_steps=max_steps)
    return out
