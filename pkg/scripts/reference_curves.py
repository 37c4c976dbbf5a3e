"""Write MN(c) curves for the three reference parameter setups.

    python3 scripts/reference_curves.py --out-dir results/curves

Each setup gets a CSV (c, mn, log_mn) plus a one-line summary of the
optimal shape parameter on stdout.
"""
from __future__ import annotations

import argparse
import pathlib
import sys

from mqshape import cli

SETUPS = {
    "n2_beta-1": ["--n", "2", "--beta", "-1", "--sigma", "1", "--b0", "1"],
    "n1_beta-1": ["--n", "1", "--beta", "-1", "--sigma", "1", "--b0", "1"],
    "n1_beta1": ["--n", "1", "--beta", "1", "--sigma", "1", "--b0", "1"],
}


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out-dir", default="results/curves")
    p.add_argument("--delta", default="0.02")
    p.add_argument("--points", default="401")
    p.add_argument("--c-min", default="0.05")
    p.add_argument("--c-max", default="20")
    args = p.parse_args(argv)

    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, flags in SETUPS.items():
        common = [*flags, "--delta", args.delta]
        path = out / f"mn_{name}.csv"
        rc = cli.main(["mn-curve", *common, "--c-min", args.c_min, "--c-max", args.c_max,
                       "--points", args.points, "--out", str(path)])
        if rc:
            return rc
        opt = out / f"optimal_{name}.json"
        rc = cli.main(["optimal-c", *common, "--out", str(opt)])
        print(f"{name}: curve -> {path}, optimal-c -> {opt} (exit {rc})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
