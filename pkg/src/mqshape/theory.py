"""Closed-form constants and pointwise error bounds for multiquadric interpolation.

Everything here is a pure function of (n, beta, b0, delta, l, c, sigma).  The
bounds are assembled as sums of logarithms and exponentiated once, so large
lattice degrees or tiny shape parameters do not overflow intermediate terms.

Bound families
--------------
``error_bound_4``
    generic bound in terms of the native-space seminorm ``||f||_h``.
``error_bound_5``
    beta < 0, |n + beta| >= 1, n + beta + 1 >= 0, in terms of ``||f||_{E_sigma}``.
``error_bound_6``
    beta = -1, n = 1.
``error_bound_7``
    beta > 0, with an unspecified constant ``d0`` (configurable, default 1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .kernel import check_beta, cpd_order
from .special_math import unit_ball_volume

__all__ = [
    "OutOfCaseError",
    "SchemeError",
    "TheoryConstants",
    "SchemeParams",
    "rho_delta0",
    "scheme_constants",
    "theory_constants",
    "degree_range",
    "xi_star",
    "M_case2",
    "h_norm_bound_case1",
    "h_norm_bound_case2",
    "h_norm_bound_case3",
    "error_bound_4",
    "error_bound_5",
    "error_bound_6",
    "error_bound_7",
    "case3_exponent_identity",
    "case1_admissible",
    "case2_admissible",
    "case3_admissible",
]

_LN2 = math.log(2.0)
_LNPI = math.log(math.pi)
# 1/(3 C delta) within this relative distance of an integer counts as that integer,
# so decimal inputs such as delta=0.0208333 resolve to the intended degree
_INT_SNAP = 1e-5


class OutOfCaseError(ValueError):
    """The parameters violate the hypotheses of the requested bound."""


class SchemeError(ValueError):
    """delta, l or r lie outside the admissible scheme ranges."""


# ----------------------------------------------------------------------------
# case hypotheses


def case1_admissible(n: int, beta: float) -> bool:
    return beta < 0 and abs(n + beta) >= 1 and n + beta + 1 >= 0


def case2_admissible(n: int, beta: float) -> bool:
    return abs(beta + 1.0) < 1e-12 and n == 1


def case3_admissible(n: int, beta: float) -> bool:
    return beta > 0 and n >= 1


# ----------------------------------------------------------------------------
# constants


@dataclass(frozen=True)
class TheoryConstants:
    n: int
    beta: float
    b0: float
    m: int
    s: int
    rho: float
    delta0_const: float
    case_label: str
    C_big: float
    delta_max: float
    lambda_prime: float

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "beta": self.beta,
            "b0": self.b0,
            "case_label": self.case_label,
            "s": self.s,
            "m": self.m,
            "rho": self.rho,
            "Delta0": self.delta0_const,
            "C": self.C_big,
            "delta0": self.delta_max,
            "lambda_prime": self.lambda_prime,
        }


def _int_product(lo: int, hi: int) -> int:
    """Product of the integers lo..hi inclusive (1 when the range is empty)."""
    return math.prod(range(lo, hi + 1))


def rho_delta0(n: int, beta: float) -> tuple[float, float, int, str]:
    """Return (rho, Delta0, s, case_label) for dimension n and exponent beta.

    Labels: ``A-i`` (beta < n-3, beta < 0), ``A-ii`` (beta < n-3, beta > 0),
    ``B`` (n-3 <= beta < n-1) and ``C`` (beta >= n-1).  In A-i and A-ii the
    product runs over s consecutive integers ending at 2+s (resp. 2m+2+s);
    in C the denominator is the product of 2m-s+3 .. 2m+2.  ``s`` is 0 in
    case B, where it is not used.
    """
    beta = check_beta(beta)
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    m = cpd_order(beta)
    if beta < n - 3:
        s = math.ceil((n - beta - 3) / 2.0)
        if beta < 0:
            rho = (3 + s) / 3.0
            return rho, _int_product(3, 2 + s) / rho**2, s, "A-i"
        rho = 1.0 + s / (2 * m + 3)
        return rho, _int_product(2 * m + 3, 2 * m + 2 + s) / rho ** (2 * m + 2), s, "A-ii"
    if beta < n - 1:
        return 1.0, 1.0, 0, "B"
    s = -math.ceil((n - beta - 3) / 2.0)
    return 1.0, 1.0 / _int_product(2 * m - s + 3, 2 * m + 2), s, "C"


def scheme_constants(rho: float, b0: float) -> tuple[float, float, float]:
    """(C, delta0, lambda') with C = max(2/(3 b0), 8 rho)."""
    if rho < 1 or not b0 > 0:
        raise ValueError(f"need rho >= 1 and b0 > 0, got rho={rho}, b0={b0}")
    C = max(2.0 / (3.0 * b0), 8.0 * rho)
    return C, 1.0 / (3.0 * C), (2.0 / 3.0) ** (1.0 / (3.0 * C))


def theory_constants(n: int, beta: float, b0: float = 1.0) -> TheoryConstants:
    rho, d0c, s, label = rho_delta0(n, beta)
    C, dmax, lam = scheme_constants(rho, b0)
    return TheoryConstants(
        n=n, beta=float(beta), b0=float(b0), m=cpd_order(beta), s=s, rho=rho,
        delta0_const=d0c, case_label=label, C_big=C, delta_max=dmax, lambda_prime=lam,
    )


def _snap(x: float) -> float:
    r = round(x)
    return float(r) if abs(x - r) <= _INT_SNAP * max(1.0, abs(x)) else x


def degree_range(C_big: float, delta: float) -> tuple[int, int]:
    """Admissible lattice degrees, ceil(1/(3C delta)) .. floor(2/(3C delta))."""
    if not 0 < delta < 1.0 / (3.0 * C_big):
        raise SchemeError(
            f"delta={delta!r} must satisfy 0 < delta < delta0 = {1.0 / (3.0 * C_big)!r}"
        )
    base = 1.0 / (3.0 * C_big * delta)
    return math.ceil(_snap(base)), math.floor(_snap(2.0 * base))


@dataclass(frozen=True)
class SchemeParams:
    b0: float
    delta: float
    l: int
    r: float

    def validate(self, tc: TheoryConstants) -> None:
        C = tc.C_big
        lo, hi = degree_range(C, self.delta)
        if not lo <= self.l <= hi:
            raise SchemeError(f"l={self.l} outside the admissible range [{lo}, {hi}]")
        rlo, rhi = 1.0 / (3.0 * C), 2.0 / (3.0 * C)
        slack = 1e-12 * rhi
        if not rlo - slack <= self.r <= rhi + slack:
            raise SchemeError(f"diameter r={self.r} outside [{rlo}, {rhi}]")


# ----------------------------------------------------------------------------
# h-norm bounds


def xi_star(c: float, sigma: float, k: float) -> float:
    """Positive root of 2 xi^2 / sigma - c xi - k/2 = 0."""
    if not (c > 0 and sigma > 0 and k >= 0):
        raise ValueError(f"need c, sigma > 0 and k >= 0, got c={c}, sigma={sigma}, k={k}")
    return (c * sigma + math.sqrt(c * c * sigma * sigma + 4.0 * sigma * k)) / 4.0


def _log_xi_factor(c: float, sigma: float, k: float) -> float:
    # log of {xi^(k/2) e^(c xi - xi^2/sigma)}^(1/2)
    xi = xi_star(c, sigma, k)
    log_pow = 0.0 if k == 0 else 0.5 * k * math.log(xi)
    return 0.5 * (log_pow + c * xi - xi * xi / sigma)


def _log_M_case2(c: float, sigma: float, branch: str | None = None) -> float:
    if branch is None:
        branch = "left" if c <= 2.0 / math.sqrt(3.0 * sigma) else "right"
    if branch == "left":
        return 1.0 - 1.0 / (c * c * sigma)
    if branch != "right":
        raise ValueError(f"branch must be 'left', 'right' or None, got {branch!r}")
    xi = (c * sigma + math.sqrt(c * c * sigma * sigma + 4.0 * sigma)) / 4.0
    return 0.5 * math.log(c * xi) + c * xi - xi * xi / sigma


def M_case2(c: float, sigma: float, branch: str | None = None) -> float:
    """The piecewise M(c) of the beta = -1, n = 1 bound.

    The breakpoint is c = 2 / sqrt(3 sigma).  ``branch`` forces one of the two
    formulas regardless of c, which is only useful for checking continuity.
    """
    return math.exp(_log_M_case2(c, sigma, branch))


def _log_case2_bracket(c: float, sigma: float) -> float:
    # log {1/ln2 + 2 sqrt(3) M(c)}^(1/2), stable when M overflows
    a = -math.log(_LN2)
    b = math.log(2.0 * math.sqrt(3.0)) + _log_M_case2(c, sigma)
    hi, lo = max(a, b), min(a, b)
    return 0.5 * (hi + math.log1p(math.exp(lo - hi)))


def _require_case1(n: int, beta: float) -> None:
    if not case1_admissible(n, beta):
        hint = " (beta=-1, n=1 is handled by the case-2 bound)" if case2_admissible(n, beta) else ""
        raise OutOfCaseError(
            f"case 1 needs beta < 0, |n+beta| >= 1, n+beta+1 >= 0; got n={n}, beta={beta}{hint}"
        )


def _log_h_norm_case1(n, beta, c, sigma) -> float:
    _require_case1(n, beta)
    return (
        (-n - (1.0 + beta) / 4.0) * _LN2
        + (-n - 0.25) * _LNPI
        + (1.0 - n - beta) / 4.0 * math.log(c)
        + _log_xi_factor(c, sigma, n + beta + 1.0)
    )


def h_norm_bound_case1(n: int, beta: float, c: float, sigma: float) -> float:
    """Factor K with ||f||_h <= K ||f||_{E_sigma} for case-1 parameters."""
    return math.exp(_log_h_norm_case1(n, beta, c, sigma))


def _log_h_norm_case2(c, sigma) -> float:
    return -1.25 * _LN2 - _LNPI + _log_case2_bracket(c, sigma)


def h_norm_bound_case2(c: float, sigma: float) -> float:
    """Factor K with ||f||_h <= K ||f||_{E_sigma} for beta = -1, n = 1."""
    if not (c > 0 and sigma > 0):
        raise ValueError("c and sigma must be positive")
    return math.exp(_log_h_norm_case2(c, sigma))


def _log_h_norm_case3(n, beta, c, sigma, d0) -> float:
    if not case3_admissible(n, beta):
        raise OutOfCaseError(f"case 3 needs beta > 0 and n >= 1; got n={n}, beta={beta}")
    if not d0 > 0:
        raise ValueError(f"d0 must be positive, got {d0}")
    return (
        math.log(d0)
        + (1.0 - beta - n) / 4.0 * math.log(c)
        + _log_xi_factor(c, sigma, 1.0 + beta + n)
    )


def h_norm_bound_case3(n: int, beta: float, c: float, sigma: float, d0: float = 1.0) -> float:
    return math.exp(_log_h_norm_case3(n, beta, c, sigma, d0))


# ----------------------------------------------------------------------------
# pointwise error bounds


def _log_common(tc: TheoryConstants, sp: SchemeParams) -> float:
    """log of sqrt(n alpha_n) sqrt(Delta0) sqrt(3C) sqrt(delta) lambda'^(1/delta)."""
    sp.validate(tc)
    n = tc.n
    return 0.5 * (
        math.log(n * unit_ball_volume(n))
        + math.log(tc.delta0_const)
        + math.log(3.0 * tc.C_big)
        + math.log(sp.delta)
    ) + math.log(tc.lambda_prime) / sp.delta


def _finish(log_value: float, norm: float) -> float:
    if norm < 0:
        raise ValueError(f"norm must be non-negative, got {norm}")
    if norm == 0:
        return 0.0
    return math.exp(log_value + math.log(norm))


def error_bound_4(tc: TheoryConstants, sp: SchemeParams, c: float, h_norm: float) -> float:
    """Bound on |f(x) - s(x)| over the simplex in terms of ||f||_h."""
    n, beta = tc.n, tc.beta
    log_v = (
        (n + beta - 7.0) / 4.0 * _LN2
        + (n - 1.0) / 4.0 * _LNPI
        + (beta / 2.0 - sp.l) * math.log(c)
        + _log_common(tc, sp)
    )
    return _finish(log_v, h_norm)


def error_bound_5(tc: TheoryConstants, sp: SchemeParams, c: float, sigma: float,
                  e_norm: float) -> float:
    n, beta = tc.n, tc.beta
    _require_case1(n, beta)
    log_v = (
        (-0.75 * n - 2.0) * _LN2
        + (-0.75 * n - 0.5) * _LNPI
        + (beta - n + 1.0 - 4.0 * sp.l) / 4.0 * math.log(c)
        + _log_xi_factor(c, sigma, n + beta + 1.0)
        + _log_common(tc, sp)
    )
    return _finish(log_v, e_norm)


def error_bound_6(tc: TheoryConstants, sp: SchemeParams, c: float, sigma: float,
                  e_norm: float) -> float:
    n, beta = tc.n, tc.beta
    if not case2_admissible(n, beta):
        raise OutOfCaseError(f"case 2 needs beta=-1 and n=1; got n={n}, beta={beta}")
    log_v = (
        ((beta - 3.0 * n) / 4.0 - 2.0) * _LN2
        + (n - 5.0) / 4.0 * _LNPI
        + (beta / 2.0 - sp.l) * math.log(c)
        + _log_case2_bracket(c, sigma)
        + _log_common(tc, sp)
    )
    return _finish(log_v, e_norm)


def error_bound_7(tc: TheoryConstants, sp: SchemeParams, c: float, sigma: float,
                  e_norm: float, d0: float = 1.0) -> float:
    n, beta = tc.n, tc.beta
    if not case3_admissible(n, beta):
        raise OutOfCaseError(f"case 3 needs beta > 0 and n >= 1; got n={n}, beta={beta}")
    if not d0 > 0:
        raise ValueError(f"d0 must be positive, got {d0}")
    log_v = (
        (n + beta - 7.0) / 4.0 * _LN2
        + (n - 1.0) / 4.0 * _LNPI
        + math.log(d0)
        + (1.0 + beta - n - 4.0 * sp.l) / 4.0 * math.log(c)
        + _log_xi_factor(c, sigma, 1.0 + beta + n)
        + _log_common(tc, sp)
    )
    return _finish(log_v, e_norm)


def case3_exponent_identity(c: float, sigma: float, n: int, beta: float) -> tuple[float, float]:
    """Both sides of c xi* - xi*^2/sigma = [2c^2 sigma + 2c sqrt(...) - 4(n+beta+1)] / 16."""
    k = n + beta + 1.0
    xi = xi_star(c, sigma, k)
    lhs = c * xi - xi * xi / sigma
    rhs = (2.0 * c * c * sigma + 2.0 * c * math.sqrt(c * c * sigma * sigma + 4.0 * sigma * k)
           - 4.0 * k) / 16.0
    return lhs, rhs
