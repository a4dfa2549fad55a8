"""Physical parameters, grid construction, problem presets and run configuration."""

import configparser
from dataclasses import dataclass, field
from enum import Enum

import numpy as np


class Problem(Enum):
    """The three linearized FSI model problems."""

    MP_I1 = "MP-I1"  # inviscid fluid, vertical shell motion only
    MP_V1 = "MP-V1"  # viscous fluid, vertical shell motion only
    MP_V2 = "MP-V2"  # viscous fluid, horizontal and vertical shell motion

    @property
    def theta(self):
        """Horizontal-motion switch: 1 only when the shell moves tangentially."""
        return 1 if self is Problem.MP_V2 else 0

    @property
    def viscous(self):
        return self is not Problem.MP_I1

    @classmethod
    def parse(cls, name):
        key = str(name).strip().upper().replace("-", "_")
        try:
            return cls[key]
        except KeyError:
            raise ValueError(f"unknown model problem {name!r}") from None


class Scheme(Enum):
    AMP = "amp"
    TRADITIONAL = "traditional"

    @classmethod
    def parse(cls, name):
        try:
            return cls[str(name).strip().upper()]
        except KeyError:
            raise ValueError(f"unknown scheme {name!r}") from None


@dataclass(frozen=True)
class PhysicalParams:
    """Fluid and shell constants for the linearized FSI problem.

    rhosh is the shell mass per unit area (density times thickness, stored
    as a single number).  hf is the length scale used in the density-weighted
    interface velocity projection.
    """

    rho: float = 1.0
    mu: float = 0.0
    L: float = 1.0
    H: float = 1.0
    rhosh: float = 1.0
    Kbar: float = 0.0
    Tbar: float = 1.0
    Bbar: float = 0.0
    hf: float = 10.0

    def __post_init__(self):
        if self.rho <= 0:
            raise ValueError("fluid density must be positive")
        if self.mu < 0:
            raise ValueError("viscosity must be non-negative")
        if self.L <= 0 or self.H <= 0:
            raise ValueError("domain dimensions must be positive")
        if self.rhosh <= 0:
            raise ValueError("shell mass per unit area must be positive")
        if min(self.Kbar, self.Tbar, self.Bbar) < 0:
            raise ValueError("shell coefficients must be non-negative")
        if self.hf <= 0:
            raise ValueError("projection length must be positive")

    @property
    def delta(self):
        """Density ratio: shell mass per area over fluid mass per area."""
        return self.rhosh / (self.rho * self.H)

    def shell_symbol(self, kx):
        """Continuous Fourier symbol of the shell restoring operator."""
        return self.Kbar + self.Tbar * kx**2 + self.Bbar * kx**4


def make_preset(delta, mu=0.0, L=1.0):
    """Standard parameter set: unit fluid density and depth, tension and
    shell mass both equal to delta, no stiffness or bending."""
    if delta <= 0:
        raise ValueError("density ratio must be positive")
    return PhysicalParams(rho=1.0, mu=mu, L=L, H=1.0, rhosh=delta,
                          Kbar=0.0, Tbar=delta, Bbar=0.0, hf=10.0)


GHOST = 2  # supports the five-point Laplacian and fourth-difference stencils


@dataclass(frozen=True)
class Grid2D:
    """Cartesian grid on (0,L) x (-H,0), periodic in x, ghost rows in y.

    Field arrays have shape (nx, ny + 2*GHOST) where nx unique periodic
    columns cover [0,L) and rows run from y=-H (index GHOST) to y=0
    (index GHOST+N2).  The top row is the fluid-shell interface.
    """

    L: float
    H: float
    N1: int
    N2: int

    def __post_init__(self):
        if min(self.N1, self.N2) < 4:
            raise ValueError("grid needs at least 4 cells per direction")

    @property
    def hx(self):
        return self.L / self.N1

    @property
    def hy(self):
        return self.H / self.N2

    @property
    def ghost(self):
        return GHOST

    @property
    def jb(self):
        """Row index of the bottom wall (y=-H) in ghost-inclusive arrays."""
        return GHOST

    @property
    def ji(self):
        """Row index of the interface (y=0) in ghost-inclusive arrays."""
        return GHOST + self.N2

    @property
    def shape(self):
        return (self.N1, self.N2 + 1 + 2 * GHOST)

    @property
    def x(self):
        """Unique x nodes (the node at x=L aliases x=0)."""
        return np.arange(self.N1) * self.hx

    @property
    def y(self):
        """y nodes from -H to 0 inclusive, no ghosts; endpoints exact."""
        y = -self.H + np.arange(self.N2 + 1) * self.hy
        y[0] = -self.H
        y[-1] = 0.0
        return y

    @property
    def y_all(self):
        """y coordinates for every row including ghost rows."""
        return -self.H + (np.arange(self.N2 + 1 + 2 * GHOST) - GHOST) * self.hy

    def alloc(self):
        return np.zeros(self.shape)

    def mesh(self):
        """Ghost-inclusive coordinate arrays shaped like field arrays."""
        return np.meshgrid(self.x, self.y_all, indexing="ij")

    def mesh_interior(self):
        """Coordinate arrays over the non-ghost rows only."""
        return np.meshgrid(self.x, self.y, indexing="ij")

    @property
    def rows(self):
        """Slice selecting the non-ghost rows of a field array."""
        return slice(GHOST, GHOST + self.N2 + 1)


def build_grid(params, N):
    """Square-cell grid with N cells in each direction (requires L/N = H/N
    only when L = H; otherwise spacings differ)."""
    if N < 4:
        raise ValueError("N must be at least 4")
    return Grid2D(L=params.L, H=params.H, N1=N, N2=N)


@dataclass
class RunConfig:
    """Everything needed to run one time-domain case."""

    params: PhysicalParams
    problem: Problem
    N: int = 20
    scheme: Scheme = Scheme.AMP
    corrector: bool = True
    dt: float | None = None       # fixed step; None means use ct * h
    ct: float = 0.25              # step-per-spacing constant when dt is None
    t_final: float = 0.5
    d2: float | None = None       # artificial dissipation; None = per-problem default
    cd: float = 0.25              # divergence damping coefficient
    solution: str = "tw"          # "tw" (traveling wave) or "mms"
    k_mode: int = 1               # traveling-wave mode number (k = 2*pi*k_mode/L)
    umax: float = 0.1             # traveling-wave shell amplitude
    fx: float = 2.0               # MMS spatial frequency
    ft: float = 2.0               # MMS temporal frequency
    abar: float = 0.1             # MMS shell amplitudes
    bbar: float = 0.1
    bottom_pressure_dirichlet: bool = False  # MP-I1 alternative wall condition
    blowup_norm: float = 1e6
    out_dir: str | None = None
    dump_fields: bool = False

    def __post_init__(self):
        if self.t_final <= 0:
            raise ValueError("t_final must be positive")
        if self.dt is not None and self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.solution not in ("tw", "mms"):
            raise ValueError("solution source must be 'tw' or 'mms'")
        if self.problem is Problem.MP_I1 and self.params.mu != 0.0:
            raise ValueError("MP-I1 requires an inviscid fluid (mu = 0)")
        if self.cd < 0 or (self.d2 is not None and self.d2 < 0):
            raise ValueError("damping coefficients must be non-negative")

    @property
    def dissipation(self):
        if self.d2 is not None:
            return self.d2
        return 0.25 if self.problem is Problem.MP_I1 else 0.0


def _getfloat(sec, key, default):
    return sec.getfloat(key, default) if sec is not None else default


def load_config(path):
    """Read a RunConfig from an INI-style file with sections
    [physics], [grid], [time], [scheme], [solution], [output]."""
    cp = configparser.ConfigParser()
    read = cp.read(path)
    if not read:
        raise FileNotFoundError(path)

    phys = cp["physics"] if "physics" in cp else None
    sol = cp["solution"] if "solution" in cp else None
    problem = Problem.parse(sol.get("problem", "MP-I1") if sol else "MP-I1")

    if phys is not None and "delta" in phys and "rhosh" not in phys:
        params = make_preset(phys.getfloat("delta"),
                             mu=phys.getfloat("mu", 0.0),
                             L=phys.getfloat("l", 1.0))
    else:
        params = PhysicalParams(
            rho=_getfloat(phys, "rho", 1.0),
            mu=_getfloat(phys, "mu", 0.0),
            L=_getfloat(phys, "l", 1.0),
            H=_getfloat(phys, "h", 1.0),
            rhosh=_getfloat(phys, "rhosh", 1.0),
            Kbar=_getfloat(phys, "kbar", 0.0),
            Tbar=_getfloat(phys, "tbar", 1.0),
            Bbar=_getfloat(phys, "bbar", 0.0),
            hf=_getfloat(phys, "hf", 10.0),
        )

    grid = cp["grid"] if "grid" in cp else None
    time = cp["time"] if "time" in cp else None
    sch = cp["scheme"] if "scheme" in cp else None
    out = cp["output"] if "output" in cp else None

    dt = time.getfloat("dt", None) if time is not None else None
    cfg = RunConfig(
        params=params,
        problem=problem,
        N=grid.getint("n", 20) if grid is not None else 20,
        scheme=Scheme.parse(sch.get("scheme", "amp")) if sch is not None else Scheme.AMP,
        corrector=sch.getboolean("corrector", True) if sch is not None else True,
        dt=dt,
        ct=_getfloat(time, "ct", 0.25),
        t_final=_getfloat(time, "t_final", 0.5),
        d2=sch.getfloat("d2", None) if sch is not None else None,
        cd=_getfloat(sch, "cd", 0.25),
        solution=sol.get("source", "tw") if sol is not None else "tw",
        k_mode=sol.getint("k_mode", 1) if sol is not None else 1,
        umax=_getfloat(sol, "umax", 0.1),
        fx=_getfloat(sol, "fx", 2.0),
        ft=_getfloat(sol, "ft", 2.0),
        abar=_getfloat(sol, "abar", 0.1),
        bbar=_getfloat(sol, "bbar", 0.1),
        out_dir=out.get("dir", None) if out is not None else None,
        dump_fields=out.getboolean("fields", False) if out is not None else False,
    )
    return cfg
