"""Shape-parameter selection by minimizing the c-dependent factor of the error bound.

For each admissible (n, beta) regime the bound splits into a constant times a
function MN(c) of the shape parameter alone; the recommended c minimizes it
over (0, inf).  MN is evaluated in log space throughout: the power factor
c^((beta - n + 1 - 4l)/4) spans hundreds of decades for moderate l, and the
exponential factor grows like exp(c^2 sigma / 8).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .kernel import check_beta
from .theory import (
    _log_case2_bracket,
    _log_xi_factor,
    case1_admissible,
    case2_admissible,
    case3_admissible,
    degree_range,
    theory_constants,
)

__all__ = [
    "UnsupportedRegimeError",
    "MNRangeError",
    "Case",
    "Limit",
    "Status",
    "MNCase",
    "MNCurve",
    "MNResult",
    "classify_case",
    "log_mn_value",
    "mn_value",
    "mn_curve",
    "mn_curve_at",
    "minimize_mn",
    "limit_behavior",
    "lattice_degree",
    "GRID_POINTS",
    "DEFAULT_BRACKET",
]

GRID_POINTS = 2001
DEFAULT_BRACKET = (1e-3, 1e3)
_REL_WIDTH = 1e-10
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_LOG_MAX = math.log(np.finfo(float).max)
_ZERO_TOL = 1e-12


class UnsupportedRegimeError(ValueError):
    """(n, beta) falls outside every regime with an MN function."""


class MNRangeError(OverflowError):
    """MN(c) is not representable as a finite float."""


class Case(str, Enum):
    CASE1 = "Case1"
    CASE2 = "Case2"
    CASE3 = "Case3"


class Limit(str, Enum):
    INF = "+inf"
    ZERO = "0"
    FINITE = "finite-positive"


class Status(str, Enum):
    INTERIOR_MIN = "interior-min"
    INFIMUM_AT_ZERO = "infimum-at-zero"
    UNBOUNDED_WARNING = "unbounded-warning"


@dataclass(frozen=True)
class MNCase:
    tag: Case
    n: int
    beta: float
    sigma: float
    l: int
    d0: float = 1.0

    def __post_init__(self) -> None:
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if self.l < 1:
            raise ValueError(f"lattice degree must be >= 1, got {self.l}")
        if not self.d0 > 0:
            raise ValueError(f"d0 must be positive, got {self.d0}")

    @property
    def power(self) -> float:
        """Exponent of the bare power of c in MN."""
        n, beta, l = self.n, self.beta, self.l
        if self.tag is Case.CASE1:
            return (beta - n + 1.0 - 4.0 * l) / 4.0
        if self.tag is Case.CASE2:
            return beta / 2.0 - l
        return (1.0 + beta - n - 4.0 * l) / 4.0


def _violations(n: int, beta: float) -> list[str]:
    out = []
    if not beta < 0:
        out.append("beta < 0")
    if not abs(n + beta) >= 1:
        out.append(f"|n+beta| >= 1 (|n+beta| = {abs(n + beta):g})")
    if not n + beta + 1 >= 0:
        out.append(f"n+beta+1 >= 0 (n+beta+1 = {n + beta + 1:g})")
    return out


def classify_case(n: int, beta: float, sigma: float = 1.0, l: int = 1,
                  d0: float = 1.0) -> MNCase:
    """The unique MN regime for (n, beta).

    Case1: beta < 0, |n+beta| >= 1, n+beta+1 >= 0.  Case2: beta = -1, n = 1.
    Case3: beta > 0.  Anything else raises UnsupportedRegimeError.
    """
    beta = check_beta(beta)
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if case1_admissible(n, beta):
        tag = Case.CASE1
    elif case2_admissible(n, beta):
        tag, beta = Case.CASE2, -1.0
    elif case3_admissible(n, beta):
        tag = Case.CASE3
    else:
        raise UnsupportedRegimeError(
            f"no MN function for n={n}, beta={beta:g}: case 1 fails "
            f"[{', '.join(_violations(n, beta))}], case 2 needs beta=-1 and n=1, "
            f"case 3 needs beta > 0"
        )
    return MNCase(tag, n, beta, sigma, l, d0)


def lattice_degree(n: int, beta: float, b0: float, delta: float) -> int:
    """Smallest admissible lattice degree for the given delta."""
    tc = theory_constants(n, beta, b0)
    return degree_range(tc.C_big, delta)[0]


def _log_shape(case: MNCase, c: float) -> float:
    # log MN without constant factors (d0); these never move the minimizer
    if not c > 0:
        raise ValueError(f"shape parameter must be positive, got {c}")
    k = case.n + case.beta + 1.0
    out = case.power * math.log(c)
    if case.tag is Case.CASE2:
        return out + _log_case2_bracket(c, case.sigma)
    return out + _log_xi_factor(c, case.sigma, k)


def log_mn_value(case: MNCase, c: float) -> float:
    """Natural log of MN(c); the Case3 value includes the factor d0."""
    out = _log_shape(case, c)
    if case.tag is Case.CASE3:
        out += math.log(case.d0)
    return out


def mn_value(case: MNCase, c: float) -> float:
    lv = log_mn_value(case, c)
    if not lv < _LOG_MAX:
        raise MNRangeError(f"MN({c:g}) = exp({lv:.6g}) overflows; use log_mn_value")
    return math.exp(lv)


@dataclass(frozen=True, eq=False)
class MNCurve:
    """Sampled MN curve.  ``log_mn`` is always finite; ``mn`` may overflow to inf."""

    case: MNCase
    c: np.ndarray
    log_mn: np.ndarray
    spacing: str = "logarithmic"

    @property
    def mn(self) -> np.ndarray:
        with np.errstate(over="ignore"):
            return np.exp(self.log_mn)

    def __len__(self) -> int:
        return len(self.c)


def mn_curve_at(case: MNCase, cs) -> MNCurve:
    cs = np.asarray(cs, dtype=float)
    if cs.ndim != 1 or len(cs) < 1 or np.any(cs <= 0) or np.any(np.diff(cs) <= 0):
        raise ValueError("c values must be positive and strictly increasing")
    logs = np.array([log_mn_value(case, float(c)) for c in cs])
    if not np.all(np.isfinite(logs)):
        raise MNRangeError("MN is not finite in log space on the requested grid")
    cs.setflags(write=False)
    logs.setflags(write=False)
    return MNCurve(case, cs, logs)


def _log_grid(c_min: float, c_max: float, count: int) -> np.ndarray:
    g = np.geomspace(c_min, c_max, count)
    g[0], g[-1] = c_min, c_max
    return g


def mn_curve(case: MNCase, c_min: float, c_max: float, count: int) -> MNCurve:
    """MN sampled at ``count`` logarithmically spaced points of [c_min, c_max]."""
    if not 0 < c_min < c_max:
        raise ValueError(f"need 0 < c_min < c_max, got [{c_min}, {c_max}]")
    if count < 2:
        raise ValueError(f"need at least 2 samples, got {count}")
    return mn_curve_at(case, _log_grid(c_min, c_max, count))


def limit_behavior(case: MNCase) -> tuple[Limit, Limit, str]:
    """Limits of MN(c) as c -> 0+ and c -> inf, plus a note (possibly empty)."""
    if case.tag is Case.CASE1:
        note = ""
        if abs(case.n + case.beta + 1.0) < _ZERO_TOL:
            note = ("n+beta+1 = 0: blow-up at 0 follows from the formula (xi* ~ c sigma/2) "
                    "but lies outside the regime the limit statement covers")
        return Limit.INF, Limit.INF, note
    if case.tag is Case.CASE2:
        return Limit.INF, Limit.INF, ""
    e = 1.0 + case.beta - case.n - 4.0 * case.l
    if abs(e) < _ZERO_TOL:
        return Limit.FINITE, Limit.INF, ""
    return (Limit.ZERO if e > 0 else Limit.INF), Limit.INF, ""


@dataclass(frozen=True)
class MNResult:
    c_star: float | None
    mn_at_c_star: float
    status: Status
    bracket: tuple[float, float]
    log_mn_at_c_star: float = float("nan")
    grid_argmin: float = float("nan")
    evaluations: int = 0
    notes: tuple[str, ...] = field(default=())


def _golden(f, a: float, b: float, rel_width: float) -> tuple[float, float, int]:
    """Golden-section search for a minimum of f on [a, b]; ties go left."""
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    evals = 2
    while b - a > rel_width * 0.5 * (a + b):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
        evals += 1
    x, fx = (c, fc) if fc <= fd else (d, fd)
    return x, fx, evals


def minimize_mn(case: MNCase, c_lo: float = DEFAULT_BRACKET[0],
                c_hi: float = DEFAULT_BRACKET[1]) -> MNResult:
    """Minimize MN over [c_lo, c_hi]: log-grid scan, then golden-section refinement.

    A grid minimum on the bracket boundary is never reported as an interior
    minimum.  When MN -> 0 as c -> 0+ the infimum is 0 and is not attained,
    so the status is ``infimum-at-zero`` with ``c_star=None``.
    """
    if not 0 < c_lo < c_hi:
        raise ValueError(f"invalid bracket [{c_lo}, {c_hi}]: need 0 < c_lo < c_hi")
    grid = _log_grid(c_lo, c_hi, GRID_POINTS)
    logs = np.array([_log_shape(case, float(c)) for c in grid])
    i = int(np.argmin(logs))  # first occurrence: ties go to smaller c
    const = log_mn_value(case, 1.0) - _log_shape(case, 1.0)
    at_zero, _, note = limit_behavior(case)
    notes = (note,) if note else ()

    if at_zero is Limit.ZERO:
        return MNResult(
            None, 0.0, Status.INFIMUM_AT_ZERO, (c_lo, c_hi), -math.inf,
            float(grid[i]), GRID_POINTS,
            notes + ("MN(c) -> 0 as c -> 0+ because 1+beta-n-4l > 0",),
        )
    if i == 0 or i == len(grid) - 1:
        side = "lower" if i == 0 else "upper"
        lv = float(logs[i]) + const
        return MNResult(
            None, math.exp(min(lv, _LOG_MAX)), Status.UNBOUNDED_WARNING, (c_lo, c_hi), lv,
            float(grid[i]), GRID_POINTS,
            notes + (f"grid minimum sits on the {side} end of the bracket; widen it",),
        )

    x, fx, evals = _golden(lambda c: _log_shape(case, c), float(grid[i - 1]),
                           float(grid[i + 1]), _REL_WIDTH)
    if fx > logs[i]:
        x, fx = float(grid[i]), float(logs[i])
    lv = fx + const
    return MNResult(
        x, math.exp(lv), Status.INTERIOR_MIN, (float(grid[i - 1]), float(grid[i + 1])), lv,
        float(grid[i]), GRID_POINTS + evals, notes,
    )
