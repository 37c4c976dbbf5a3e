"""End-to-end checks: interpolate a Gaussian on an admissible simplex lattice,
measure the error, and compare it against the applicable E_sigma error bound."""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .espace import DivergentNormError, GaussianFunction, esigma_norm_gaussian
from .interpolant import ConditioningError, interpolate, max_error_on_lattice
from .kernel import KernelParams
from .mn_optimizer import Case, MNCase, MNCurve, classify_case, log_mn_value, mn_curve_at
from .simplex import evenly_spaced_points, regular_simplex
from .theory import (
    SchemeParams,
    TheoryConstants,
    degree_range,
    error_bound_5,
    error_bound_6,
    error_bound_7,
    theory_constants,
)

__all__ = [
    "ExperimentConfig",
    "ExperimentReport",
    "run_experiment",
    "sweep_c",
    "reports_to_csv",
    "sweep_argmins",
    "CSV_HEADER",
    "WELL_CONDITIONED",
]

CSV_HEADER = ("c", "mn", "max_error", "bound", "ratio", "cond_estimate", "l", "N", "status")
WELL_CONDITIONED = 1e12


@dataclass(frozen=True)
class ExperimentConfig:
    n: int = 2
    beta: float = -1.0
    sigma: float = 1.0
    b0: float = 1.0
    delta: float = 1.0 / 48.0
    c: float = 1.0
    a: float | None = 0.25  # None interpolates the zero function
    probe_multiplier: int = 4
    d0: float = 1.0
    # position of r inside [1/(3C), 2/(3C)]: 0 is the left end, 1 the right
    diameter_fraction: float = 0.5
    l: int | None = None  # defaults to the smallest admissible degree

    def validate(self) -> tuple[MNCase, TheoryConstants, int]:
        tc = theory_constants(self.n, self.beta, self.b0)
        lo, hi = degree_range(tc.C_big, self.delta)
        l = lo if self.l is None else self.l
        if not lo <= l <= hi:
            raise ValueError(f"l={l} outside the admissible range [{lo}, {hi}]")
        case = classify_case(self.n, self.beta, self.sigma, l, self.d0)
        if not 0.0 <= self.diameter_fraction <= 1.0:
            raise ValueError("diameter_fraction must lie in [0, 1]")
        if self.probe_multiplier < 1:
            raise ValueError("probe_multiplier must be >= 1")
        if not self.c > 0:
            raise ValueError(f"c must be positive, got {self.c}")
        if self.a is not None and not GaussianFunction(self.a, self.n).admissible(self.sigma):
            raise DivergentNormError(
                f"Gaussian exp(-a|x|^2) with a={self.a} is not in E_sigma for "
                f"sigma={self.sigma}: admissibility needs sigma > 2a"
            )
        return case, tc, l


@dataclass(frozen=True)
class ExperimentReport:
    config: ExperimentConfig
    case: str
    l: int
    r: float
    N: int
    cond_estimate: float
    max_error: float
    bound: float
    ratio: float
    mn: float
    log_mn: float
    e_norm: float
    status: str
    constants: dict = field(default_factory=dict)

    @property
    def well_conditioned(self) -> bool:
        return self.status == "ok"

    def row(self) -> dict:
        return {
            "c": self.config.c,
            "mn": self.mn,
            "max_error": self.max_error,
            "bound": self.bound,
            "ratio": self.ratio,
            "cond_estimate": self.cond_estimate,
            "l": self.l,
            "N": self.N,
            "status": self.status,
        }


def _bound(case: MNCase, tc: TheoryConstants, sp: SchemeParams, cfg: ExperimentConfig,
           e_norm: float) -> float:
    if case.tag is Case.CASE1:
        return error_bound_5(tc, sp, cfg.c, cfg.sigma, e_norm)
    if case.tag is Case.CASE2:
        return error_bound_6(tc, sp, cfg.c, cfg.sigma, e_norm)
    return error_bound_7(tc, sp, cfg.c, cfg.sigma, e_norm, cfg.d0)


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    """Interpolate, measure the probe-lattice error, and evaluate the bound.

    Ill-conditioned or singular solves do not raise; the report carries
    ``status`` ``ill-conditioned`` (cond >= 1e12) or ``singular`` instead.
    """
    case, tc, l = cfg.validate()
    C = tc.C_big
    r = (1.0 + cfg.diameter_fraction) / (3.0 * C)
    sp = SchemeParams(cfg.b0, cfg.delta, l, r)
    simplex = regular_simplex(cfg.n, r)
    centers = evenly_spaced_points(simplex, l)

    if cfg.a is None:
        target = lambda x: np.zeros(len(np.atleast_2d(x)))  # noqa: E731
        e_norm = 0.0
    else:
        g = GaussianFunction(cfg.a, cfg.n)
        target = g
        e_norm = esigma_norm_gaussian(g, cfg.sigma)
    bound = _bound(case, tc, sp, cfg, e_norm)
    log_mn = log_mn_value(case, cfg.c)
    mn = math.exp(log_mn) if log_mn < 709.0 else math.inf

    kernel = KernelParams(cfg.beta, cfg.c, cfg.n)
    try:
        s = interpolate(centers, kernel, target(centers.points))
    except ConditioningError as exc:
        err, cond, status = math.nan, exc.cond_estimate, "singular"
    else:
        cond = s.cond_estimate
        err = max_error_on_lattice(s, target, cfg.probe_multiplier * l)
        status = "ok" if cond < WELL_CONDITIONED else "ill-conditioned"
    if math.isnan(err):
        ratio = math.nan
    elif err == 0.0:
        ratio = 0.0
    else:
        ratio = err / bound if bound > 0 else math.inf

    return ExperimentReport(
        config=cfg, case=case.tag.value, l=l, r=r, N=len(centers), cond_estimate=cond,
        max_error=err, bound=bound, ratio=ratio, mn=mn, log_mn=log_mn, e_norm=e_norm,
        status=status, constants=tc.as_dict(),
    )


def sweep_c(cfg: ExperimentConfig, cs, workers: int = 1) -> tuple[list[ExperimentReport], MNCurve]:
    """Run one experiment per shape parameter and pair it with the MN curve."""
    cs = sorted(float(c) for c in cs)
    case, _, _ = cfg.validate()
    curve = mn_curve_at(case, cs)
    cfgs = [replace(cfg, c=c) for c in cs]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(run_experiment, cfgs))
    else:
        reports = [run_experiment(c) for c in cfgs]
    return reports, curve


def sweep_argmins(reports, curve: MNCurve) -> dict:
    """Grid argmin of the measured error (well-conditioned points only) and of MN.

    Reported side by side; nothing asserts that the two coincide.
    """
    ok = [r for r in reports if r.well_conditioned]
    empirical = min(ok, key=lambda r: (r.max_error, r.config.c)).config.c if ok else None
    return {"empirical_c": empirical, "mn_c": float(curve.c[int(np.argmin(curve.log_mn))])}


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    if isinstance(v, str):
        return v
    return format(float(v), ".17g")


def reports_to_csv(reports, meta: str | None = None) -> str:
    """CSV text with ``#`` metadata lines, LF endings and 17-digit floats."""
    buf = io.StringIO()
    if meta:
        for line in meta.splitlines():
            buf.write(f"# {line}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for rep in reports:
        row = rep.row()
        w.writerow([_fmt(row[k]) for k in CSV_HEADER])
    return buf.getvalue()
