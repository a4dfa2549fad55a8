"""Benchmark: compiled stencil kernels vs the numpy fallback.

Times each kernel on a grid-sized array, then times full solver steps
under each backend (selected via the AMPFSI_FORCE_PY environment
variable in a subprocess, since the backend is chosen at import time).

Usage: python benchmarks/bench_kernels.py [N]
"""

import os
import subprocess
import sys
import timeit

import numpy as np


def bench_kernels(N=80, repeats=200):
    from ampfsi._core import py_kernels
    try:
        from ampfsi._core import cy_kernels
    except ImportError:
        print("compiled kernels unavailable; nothing to compare")
        return
    rng = np.random.default_rng(1)
    f = rng.standard_normal((N, N + 5))
    g = rng.standard_normal((N, N + 5))
    u = rng.standard_normal((2, N))

    cases = [
        ("dx", lambda m: m.dx(f, 0.0125)),
        ("dy", lambda m: m.dy(f, 0.0125)),
        ("laplacian", lambda m: m.laplacian(f, 0.0125, 0.0125)),
        ("divergence", lambda m: m.divergence(f, g, 0.0125, 0.0125)),
        ("fourth_diff_x", lambda m: m.fourth_diff_x(f, 0.0125)),
        ("fourth_diff_y", lambda m: m.fourth_diff_y(f, 0.0125)),
        ("shell_restoring", lambda m: m.shell_restoring(u, 1.0, 2.0, 3.0,
                                                        0.0125)),
    ]
    print(f"kernel timings, grid {N}x{N + 5}, best of {repeats}")
    print(f"{'kernel':>16} {'numpy':>12} {'compiled':>12} {'speedup':>9}")
    for name, call in cases:
        tp = min(timeit.repeat(lambda: call(py_kernels), number=1,
                               repeat=repeats))
        tc = min(timeit.repeat(lambda: call(cy_kernels), number=1,
                               repeat=repeats))
        print(f"{name:>16} {tp * 1e6:>10.1f}us {tc * 1e6:>10.1f}us "
              f"{tp / tc:>8.2f}x")


STEP_SNIPPET = r"""
import timeit
import ampfsi
from ampfsi import harness
from ampfsi.params import RunConfig, Problem, make_preset, build_grid
from ampfsi.coupling import Stepper

cfg = RunConfig(params=make_preset(1.0, mu=0.05), problem=Problem.MP_V2, N={N})
grid = build_grid(cfg.params, cfg.N)
st = Stepper(cfg, grid, harness.make_driver(cfg), harness.choose_dt(cfg, grid))
st.step()  # warm the pressure factorization
t = min(timeit.repeat(st.step, number=5, repeat=10)) / 5
print(f"backend compiled={{ampfsi.COMPILED}}: {{t * 1e3:.2f}} ms/step")
"""


def bench_steps(N=80):
    print(f"\nfull solver step, MP-V2 traveling wave, N={N}")
    for force_py in ("1", ""):
        env = dict(os.environ, AMPFSI_FORCE_PY=force_py)
        subprocess.run([sys.executable, "-c", STEP_SNIPPET.format(N=N)],
                       env=env, check=True)


if __name__ == "__main__":
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 80
    bench_kernels(n)
    bench_steps(n)
