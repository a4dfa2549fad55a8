"""Command-line interface.

Subcommands: solve (one run), converge (grid-refinement study), modes
(closed-form stability map), dispersion (traveling-wave frequencies),
mms-check (manufactured-solution convergence).  Exit codes: 0 success,
2 blow-up, 3 convergence-rate failure, 4 bad configuration.
"""

import argparse
import sys
from dataclasses import replace

import numpy as np

from . import exact, harness, modes
from .harness import EXIT_BLOWUP, EXIT_CONFIG, EXIT_OK, EXIT_RATE
from .params import (Problem, RunConfig, Scheme, load_config, make_preset)


def _base_config(args):
    if getattr(args, "config", None):
        cfg = load_config(args.config)
    else:
        cfg = RunConfig(params=make_preset(args.delta, mu=args.mu),
                        problem=Problem.parse(args.problem))
    over = {}
    for name in ("N", "dt", "ct", "t_final", "d2", "cd", "umax"):
        v = getattr(args, name.lower(), None)
        if v is not None:
            over[name] = v
    if getattr(args, "scheme", None):
        over["scheme"] = Scheme.parse(args.scheme)
    if getattr(args, "solution", None):
        over["solution"] = args.solution
    if getattr(args, "no_corrector", False):
        over["corrector"] = False
    if getattr(args, "out", None):
        over["out_dir"] = args.out
        over["dump_fields"] = True
    return replace(cfg, **over) if over else cfg


def _add_common(p):
    p.add_argument("--config", help="INI configuration file")
    p.add_argument("--problem", default="MP-I1",
                   help="MP-I1, MP-V1 or MP-V2")
    p.add_argument("--delta", type=float, default=1.0,
                   help="density ratio preset")
    p.add_argument("--mu", type=float, default=0.0, help="viscosity")
    p.add_argument("--n", dest="n", type=int, default=None, help="grid cells")
    p.add_argument("--scheme", default=None, help="amp or traditional")
    p.add_argument("--dt", type=float, default=None)
    p.add_argument("--ct", type=float, default=None)
    p.add_argument("--t-final", dest="t_final", type=float, default=None)
    p.add_argument("--d2", type=float, default=None,
                   help="artificial dissipation coefficient")
    p.add_argument("--cd", type=float, default=None,
                   help="divergence damping coefficient")
    p.add_argument("--solution", default=None, help="tw or mms")
    p.add_argument("--umax", type=float, default=None)
    p.add_argument("--no-corrector", action="store_true")
    p.add_argument("--out", default=None, help="output directory")


def cmd_solve(args):
    cfg = _base_config(args)
    res = harness.run(cfg, max_steps=args.steps)
    if res.blew_up:
        print(f"BLOW-UP at step {res.blowup_step} (t={res.final_report.t:.4g})")
        return EXIT_BLOWUP
    print(f"steps={res.steps} dt={res.dt:.4e} t={res.final_report.t:.4g}")
    for k, v in res.errors.items():
        print(f"  max-norm error {k:>2}: {v:.4e}")
    print(f"  interface mismatch: {res.final_report.mismatch:.3e}"
          f"  divergence: {res.final_report.div_norm:.3e}")
    return EXIT_OK


def cmd_converge(args):
    cfg = _base_config(args)
    Ns = [int(s) for s in args.grids.split(",")]
    res = harness.converge(cfg, Ns=Ns)
    print(res.table())
    if args.out_csv:
        res.write_csv(args.out_csv)
    if any(r.blew_up for r in res.results):
        return EXIT_BLOWUP
    bad = [f for f, z in res.rates.items()
           if not (args.rate_min <= z <= args.rate_max)]
    if bad:
        print(f"rate check failed for: {', '.join(bad)}")
        return EXIT_RATE
    return EXIT_OK


def cmd_modes(args):
    deltas = [float(s) for s in args.deltas.split(",")]
    kxs = [2.0 * np.pi * m for m in range(1, args.modes + 1)]
    dts = [float(s) for s in args.dts.split(",")]
    rows = modes.stability_map_rows(deltas, kxs, dts,
                                    ("amp", "traditional"))
    print(f"{'delta':>10} {'kx':>10} {'dt':>10} {'scheme':>12} "
          f"{'max|A|':>10}  verdict")
    for d, kx, dt, sch, mm, verdict in rows:
        print(f"{d:>10.3g} {kx:>10.4g} {dt:>10.4g} {sch:>12} "
              f"{mm:>10.6f}  {verdict}")
    return EXIT_OK


def cmd_dispersion(args):
    k = 2.0 * np.pi * args.k_mode
    for delta in [float(s) for s in args.deltas.split(",")]:
        prm = make_preset(delta, mu=args.mu)
        if args.mu == 0.0:
            w, _ = exact.mp_i1_dispersion(k, prm)
            print(f"delta={delta:<8g} inviscid omega = {w:.6g}")
        else:
            for theta, name in ((0, "MP-V1"), (1, "MP-V2")):
                w = exact.find_omega(k, prm, theta)
                print(f"delta={delta:<8g} {name}: omega = "
                      f"({w.real:.6g}, {w.imag:.6g})")
    return EXIT_OK


def cmd_mms_check(args):
    args.solution = "mms"
    if args.mu == 0.0:
        args.mu = 0.05
    args.problem = "MP-V2"
    return cmd_converge(args)


def main(argv=None):
    ap = argparse.ArgumentParser(
        prog="ampfsi",
        description="Added-mass partitioned solver for linearized "
                    "flow-shell interaction")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run one case against its exact solution")
    _add_common(p)
    p.add_argument("--steps", type=int, default=None,
                   help="fixed number of steps instead of t_final")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("converge", help="grid-refinement study")
    _add_common(p)
    p.add_argument("--grids", default="20,40,80")
    p.add_argument("--rate-min", type=float, default=1.5)
    p.add_argument("--rate-max", type=float, default=2.5)
    p.add_argument("--out-csv", default=None)
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("modes", help="closed-form mode-stability map")
    p.add_argument("--deltas", default="0.01,1,1000")
    p.add_argument("--modes", type=int, default=3)
    p.add_argument("--dts", default="0.0125,0.025,0.05")
    p.set_defaults(func=cmd_modes)

    p = sub.add_parser("dispersion", help="traveling-wave frequencies")
    p.add_argument("--deltas", default="0.01,1,1000")
    p.add_argument("--mu", type=float, default=0.0)
    p.add_argument("--k-mode", type=int, default=1)
    p.set_defaults(func=cmd_dispersion)

    p = sub.add_parser("mms-check", help="manufactured-solution convergence")
    _add_common(p)
    p.add_argument("--grids", default="20,40,80")
    p.add_argument("--rate-min", type=float, default=1.5)
    p.add_argument("--rate-max", type=float, default=2.5)
    p.add_argument("--out-csv", default=None)
    p.set_defaults(func=cmd_mms_check)

    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
