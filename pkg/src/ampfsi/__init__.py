"""Added-mass partitioned solver for linearized incompressible-flow /
elastic-shell interaction on a periodic channel.

Subpackages: params (configuration and grids), shell and fluid (discrete
subdomain models), coupling (partitioned time stepping), modes
(closed-form stability theory), exact (traveling-wave and manufactured
solutions), harness (convergence and comparison studies), cli.
"""

from . import coupling, exact, fluid, harness, modes, params, shell
from ._core import COMPILED
from .params import (Grid2D, PhysicalParams, Problem, RunConfig, Scheme,
                     build_grid, load_config, make_preset)

__version__ = "1.0.0"

__all__ = [
    "COMPILED", "Grid2D", "PhysicalParams", "Problem", "RunConfig", "Scheme",
    "build_grid", "coupling", "exact", "fluid", "harness", "load_config",
    "make_preset", "modes", "params", "shell",
]
