"""Sweep c for a Gaussian target and compare measured error with the bound.

    python3 scripts/bound_check.py --n 2 --beta -1 --a 0.25 --deltas 0.0208333 0.0104167

Prints one line per (delta, c) and writes the sweep CSV next to it.
"""
from __future__ import annotations

import argparse
import math
import pathlib

import numpy as np

from mqshape.experiment import ExperimentConfig, reports_to_csv, sweep_argmins, sweep_c


def main(argv=None) -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--beta", type=float, default=-1.0)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--b0", type=float, default=1.0)
    p.add_argument("--a", type=float, default=0.25)
    p.add_argument("--deltas", type=float, nargs="+", default=[1 / 48, 1 / 96])
    p.add_argument("--c-min", type=float, default=0.25)
    p.add_argument("--c-max", type=float, default=4.0)
    p.add_argument("--points", type=int, default=9)
    p.add_argument("--workers", type=int, default=4)
    p.add_argument("--out-dir", default="results/bounds")
    args = p.parse_args(argv)

    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    cs = np.geomspace(args.c_min, args.c_max, args.points)
    for delta in args.deltas:
        cfg = ExperimentConfig(n=args.n, beta=args.beta, sigma=args.sigma, b0=args.b0,
                               a=args.a, delta=delta)
        reports, curve = sweep_c(cfg, cs, workers=args.workers)
        for r in reports:
            flag = "" if r.status == "ok" else f"  [{r.status}]"
            print(f"delta={delta:.6g} l={r.l:2d} c={r.config.c:8.4f} err={r.max_error:10.3e} "
                  f"bound={r.bound:10.3e} ratio={r.ratio:10.3e}{flag}")
        worst = max((r.ratio for r in reports if r.well_conditioned), default=math.nan)
        print(f"  worst well-conditioned ratio {worst:.3e}; argmins {sweep_argmins(reports, curve)}")
        path = out / f"sweep_n{args.n}_beta{args.beta:g}_delta{delta:.6g}.csv"
        path.write_text(reports_to_csv(reports, f"n={args.n} beta={args.beta} delta={delta}"))


if __name__ == "__main__":
    main()
