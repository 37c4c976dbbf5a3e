"""Command-line front end.

    mqshape constants --n 2 --beta -1 --b0 1
    mqshape mn-curve  --n 2 --beta -1 --sigma 1 --b0 1 --delta 0.02 --out curve.csv
    mqshape optimal-c --n 1 --beta 1 --sigma 1 --l 1
    mqshape verify    --n 2 --beta -1 --sigma 1 --b0 1 --delta 0.0208 --c-min 0.5 --c-max 2 --points 3

Exit codes: 0 success, 2 usage/validation, 3 unsupported regime, 4 numerical
failure, 5 optimal-c infimum at c -> 0+, 6 optimal-c minimum on the bracket edge.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys

from . import __version__
from .espace import DivergentNormError
from .experiment import ExperimentConfig, reports_to_csv, run_experiment, sweep_c
from .interpolant import ConditioningError
from .mn_optimizer import (
    DEFAULT_BRACKET,
    MNRangeError,
    Status,
    UnsupportedRegimeError,
    classify_case,
    limit_behavior,
    minimize_mn,
    mn_curve,
)
from .theory import SchemeError, degree_range, theory_constants

log = logging.getLogger("mqshape")

EXIT_OK, EXIT_USAGE, EXIT_REGIME, EXIT_NUMERIC = 0, 2, 3, 4
EXIT_INF_AT_ZERO, EXIT_BOUNDARY = 5, 6

DEFAULTS = {
    "b0": 1.0,
    "sigma": 1.0,
    "d0": 1.0,
    "a": 0.25,
    "c": 1.0,
    "c_min": DEFAULT_BRACKET[0],
    "c_max": DEFAULT_BRACKET[1],
    "points": 201,
    "probe_multiplier": 4,
    "format": None,
}
_KNOWN = {
    "n", "beta", "sigma", "b0", "delta", "l", "c", "c_min", "c_max", "points",
    "a", "d0", "probe_multiplier", "out", "format",
}


class UsageError(ValueError):
    pass


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _meta(command: str, params: dict) -> str:
    items = " ".join(f"{k}={params[k]!r}" for k in sorted(params) if params[k] is not None)
    return f"mqshape {__version__} {command} {items}"


def _add_common(p: argparse.ArgumentParser, *, theory_only: bool = False) -> None:
    p.add_argument("--config", help="JSON file with flag values; flags override it")
    p.add_argument("--n", type=int, help="ambient dimension")
    p.add_argument("--beta", type=float, help="kernel exponent")
    p.add_argument("--b0", type=float, help="diameter budget b0 (default 1)")
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"))
    if theory_only:
        return
    p.add_argument("--sigma", type=float, help="E_sigma weight parameter (default 1)")
    p.add_argument("--d0", type=float, help="unspecified constant for beta > 0 (default 1)")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--delta", type=float, help="scheme parameter; picks the smallest admissible l")
    g.add_argument("--l", type=int, help="lattice degree, given directly")
    p.add_argument("--c-min", dest="c_min", type=float)
    p.add_argument("--c-max", dest="c_max", type=float)
    p.add_argument("--points", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mqshape", description="Multiquadric shape-parameter selection and bound checks"
    )
    parser.add_argument("--version", action="version", version=f"mqshape {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", help="print rho, Delta0, C, delta0, lambda'")
    _add_common(p, theory_only=True)

    p = sub.add_parser("mn-curve", help="sample MN(c) on a log grid (CSV)")
    _add_common(p)

    p = sub.add_parser("optimal-c", help="minimize MN(c) over a bracket (JSON)")
    _add_common(p)

    p = sub.add_parser("verify", help="interpolate a Gaussian and compare with the bound (CSV)")
    _add_common(p)
    p.add_argument("--c", type=float, help="single shape parameter (else a log grid)")
    p.add_argument("--a", type=float, help="Gaussian decay rate (default 0.25)")
    p.add_argument("--probe-multiplier", dest="probe_multiplier", type=int)
    return parser


def _resolve(args: argparse.Namespace) -> dict:
    params: dict = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            raw = json.load(fh)
        if not isinstance(raw, dict):
            raise UsageError("config file must hold a JSON object")
        for key, value in raw.items():
            k = key.lstrip("-").replace("-", "_")
            if k not in _KNOWN:
                raise UsageError(f"unknown config key {key!r}")
            params[k] = value
    for k, v in vars(args).items():
        if k in _KNOWN and v is not None:
            params[k] = v
    if args.command != "verify" and args.command != "constants" and "c" in params:
        params.pop("c")
    for k, v in DEFAULTS.items():
        params.setdefault(k, v)
    for k in ("n", "beta"):
        if params.get(k) is None:
            raise UsageError(f"--{k} is required")
    if params.get("delta") is not None and params.get("l") is not None and args.command != "constants":
        if args.delta is not None or args.l is not None:
            # a flag on the command line overrides the other key from the file
            params.pop("l" if args.delta is not None else "delta")
        else:
            raise UsageError("give either delta or l, not both")
    return params


def _lattice_degree(params: dict) -> int:
    if params.get("l") is not None:
        l = int(params["l"])
        if l < 1:
            raise UsageError("--l must be >= 1")
        return l
    if params.get("delta") is None:
        raise UsageError("one of --delta or --l is required")
    tc = theory_constants(int(params["n"]), float(params["beta"]), float(params["b0"]))
    return degree_range(tc.C_big, float(params["delta"]))[0]


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=True) + "\n"


def cmd_constants(params: dict) -> int:
    tc = theory_constants(int(params["n"]), float(params["beta"]), float(params["b0"]))
    record = tc.as_dict()
    meta = _meta("constants", {k: params.get(k) for k in ("n", "beta", "b0")})
    if params["format"] == "csv":
        buf = io.StringIO()
        buf.write(f"# {meta}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(list(record))
        w.writerow([v if isinstance(v, (int, str)) else _fmt(v) for v in record.values()])
        _emit(buf.getvalue(), params.get("out"))
    else:
        _emit(_json({"meta": meta, **record}), params.get("out"))
    return EXIT_OK


def _case(params: dict):
    l = _lattice_degree(params)
    return classify_case(int(params["n"]), float(params["beta"]), float(params["sigma"]), l,
                         float(params["d0"]))


def _curve_meta(command: str, params: dict, case) -> str:
    keys = ("n", "beta", "sigma", "b0", "delta", "d0", "c_min", "c_max", "points")
    p = {k: params.get(k) for k in keys}
    p["l"] = case.l
    p["case"] = case.tag.value
    return _meta(command, p)


def cmd_mn_curve(params: dict) -> int:
    case = _case(params)
    curve = mn_curve(case, float(params["c_min"]), float(params["c_max"]), int(params["points"]))
    buf = io.StringIO()
    buf.write(f"# {_curve_meta('mn-curve', params, case)}\n")
    at0, atinf, note = limit_behavior(case)
    buf.write(f"# limits: c->0+ {at0.value}, c->inf {atinf.value}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("c", "mn", "log_mn"))
    for c, m, lm in zip(curve.c, curve.mn, curve.log_mn):
        w.writerow((_fmt(c), _fmt(m), _fmt(lm)))
    _emit(buf.getvalue(), params.get("out"))
    return EXIT_OK


def cmd_optimal_c(params: dict) -> int:
    case = _case(params)
    res = minimize_mn(case, float(params["c_min"]), float(params["c_max"]))
    record = {
        "meta": _curve_meta("optimal-c", params, case),
        "case": case.tag.value,
        "l": case.l,
        "status": res.status.value,
        "c_star": res.c_star,
        "mn_at_c_star": res.mn_at_c_star,
        "log_mn_at_c_star": res.log_mn_at_c_star if math.isfinite(res.log_mn_at_c_star) else None,
        "bracket": list(res.bracket),
        "grid_argmin": res.grid_argmin,
        "notes": list(res.notes),
    }
    _emit(_json(record), params.get("out"))
    if res.status is Status.INFIMUM_AT_ZERO:
        print("MN(c) -> 0 as c -> 0+ (1+beta-n-4l > 0): no optimal c > 0 exists",
              file=sys.stderr)
        return EXIT_INF_AT_ZERO
    if res.status is Status.UNBOUNDED_WARNING:
        print(f"warning: {res.notes[-1]}", file=sys.stderr)
        return EXIT_BOUNDARY
    return EXIT_OK


def cmd_verify(params: dict, c_given: bool) -> int:
    if params.get("delta") is None:
        raise UsageError("verify needs --delta (the lattice degree is derived from it)")
    cfg = ExperimentConfig(
        n=int(params["n"]), beta=float(params["beta"]), sigma=float(params["sigma"]),
        b0=float(params["b0"]), delta=float(params["delta"]), c=float(params["c"]),
        a=float(params["a"]), probe_multiplier=int(params["probe_multiplier"]),
        d0=float(params["d0"]),
    )
    keys = ("n", "beta", "sigma", "b0", "delta", "a", "d0", "probe_multiplier")
    meta_p = {k: params.get(k) for k in keys}
    if c_given:
        meta_p["c"] = params["c"]
        reports = [run_experiment(cfg)]
    else:
        meta_p.update(c_min=params["c_min"], c_max=params["c_max"], points=params["points"])
        lo, hi, count = float(params["c_min"]), float(params["c_max"]), int(params["points"])
        if not 0 < lo < hi or count < 1:
            raise UsageError("need 0 < c-min < c-max and points >= 1")
        grid = [lo] if count == 1 else [lo * (hi / lo) ** (i / (count - 1)) for i in range(count)]
        reports, _ = sweep_c(cfg, grid)
    _emit(reports_to_csv(reports, _meta("verify", meta_p)), params.get("out"))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        params = _resolve(args)
        if args.command == "constants":
            return cmd_constants(params)
        if args.command == "mn-curve":
            if params.get("format") == "json":
                raise UsageError("mn-curve writes CSV only")
            return cmd_mn_curve(params)
        if args.command == "optimal-c":
            if params["c_min"] >= params["c_max"] or params["c_min"] <= 0:
                raise UsageError(
                    f"invalid bracket: need 0 < c-min < c-max, got {params['c_min']}, {params['c_max']}"
                )
            return cmd_optimal_c(params)
        c_given = getattr(args, "c", None) is not None or (
            args.config is not None and "c" in _config_keys(args.config)
        )
        return cmd_verify(params, c_given)
    except UnsupportedRegimeError as exc:
        print(f"mqshape: unsupported regime: {exc}", file=sys.stderr)
        return EXIT_REGIME
    except (ConditioningError, MNRangeError, OverflowError) as exc:
        print(f"mqshape: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UsageError, SchemeError, DivergentNormError, ValueError, OSError) as exc:
        print(f"mqshape: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _config_keys(path: str) -> set[str]:
    with open(path, encoding="utf-8") as fh:
        return {k.lstrip("-").replace("-", "_") for k in json.load(fh)}


if __name__ == "__main__":
    sys.exit(main())
