"""Norms in the Gaussian-weighted Fourier space E_sigma.

    ||f||_{E_sigma}^2 = int |f_hat(xi)|^2 exp(|xi|^2 / sigma) dxi

Fourier transforms use the unitary convention
f_hat(xi) = (2 pi)^(-n/2) int f(x) exp(-i <x, xi>) dx.  Under it the Gaussian
f(x) = exp(-a |x|^2) has |f_hat(xi)|^2 = (2a)^(-n) exp(-|xi|^2 / (2a)), so f
lies in E_sigma exactly when sigma > 2a.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate

from .special_math import unit_ball_volume

__all__ = [
    "DivergentNormError",
    "GaussianFunction",
    "esigma_norm_gaussian",
    "esigma_norm_quadrature",
    "gaussian_fhat_squared",
]


class DivergentNormError(ValueError):
    """The weighted Fourier integral does not converge."""


@dataclass(frozen=True)
class GaussianFunction:
    """f(x) = exp(-a |x|^2) on R^n."""

    a: float
    n: int

    def __post_init__(self) -> None:
        if not self.a > 0:
            raise ValueError(f"decay rate a must be positive, got {self.a}")
        if self.n < 1:
            raise ValueError(f"dimension must be >= 1, got {self.n}")

    def __call__(self, x) -> np.ndarray:
        x = np.atleast_2d(np.asarray(x, dtype=float))
        return np.exp(-self.a * np.einsum("ij,ij->i", x, x))

    def admissible(self, sigma: float) -> bool:
        return sigma > 2.0 * self.a


def gaussian_fhat_squared(a: float, n: int) -> Callable[[float], float]:
    """|f_hat|^2 of exp(-a|x|^2) as a function of the radius |xi|."""
    scale = (2.0 * a) ** (-n)
    return lambda r: scale * math.exp(-r * r / (2.0 * a))


def esigma_norm_gaussian(g: GaussianFunction, sigma: float) -> float:
    """Closed-form E_sigma norm of a Gaussian."""
    if not g.admissible(sigma):
        raise DivergentNormError(
            f"exp(-a|x|^2) with a={g.a} is not in E_sigma for sigma={sigma}: need sigma > 2a"
        )
    a, n = g.a, g.n
    sq = (2.0 * a) ** (-n) * (2.0 * a * math.pi * sigma / (sigma - 2.0 * a)) ** (n / 2.0)
    return math.sqrt(sq)


def _weighted(fhat_squared, sigma):
    def integrand(r: float) -> float:
        v = fhat_squared(r)
        if v == 0.0:
            return 0.0
        # combine in log space: exp(r^2/sigma) alone overflows long before v underflows
        return math.exp(math.log(v) + r * r / sigma)

    return integrand


def _tail_radius(fhat_squared, integrand, rel_tol: float = 1e-17) -> float:
    """First dyadic radius past the bulk where the weighted integrand is negligible.

    If |f_hat|^2 underflows to zero while the weighted integrand is still of
    the order of its peak, the decay came from float underflow rather than
    from the integrand, and the integral is reported as divergent.
    """
    peak = 0.0
    last = 0.0
    for k in range(-8, 40):
        r = 2.0**k
        try:
            v = integrand(r)
        except OverflowError:
            raise DivergentNormError("weighted integrand overflows: |f_hat|^2 decays too slowly")
        if not math.isfinite(v):
            raise DivergentNormError("weighted integrand is not finite")
        if v == 0.0 and fhat_squared(r) == 0.0 and last > rel_tol * peak:
            raise DivergentNormError(
                "weighted integrand does not decay: the E_sigma norm diverges"
            )
        peak = max(peak, v)
        if v > 0.0:
            last = v
        if r >= 1.0 and v <= rel_tol * peak:
            return r
    raise DivergentNormError("weighted integrand does not decay: the E_sigma norm diverges")


def esigma_norm_quadrature(fhat_squared: Callable[[float], float], sigma: float,
                           n: int) -> float:
    """E_sigma norm of a radial |f_hat|^2 by adaptive quadrature in the radius.

    The n-dimensional integral is reduced to int_0^inf g(r) n alpha_n r^(n-1) dr.
    Raises DivergentNormError when the weighted integrand fails to decay.
    """
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    w = _weighted(fhat_squared, sigma)
    R = _tail_radius(fhat_squared, w)
    surface = n * unit_ball_volume(n)

    def radial(r: float) -> float:
        return w(r) * r ** (n - 1)

    # split at dyadic radii so quad sees the bulk of a narrow peak
    edges = [0.0] + [R * 2.0**-k for k in range(12, -1, -1)]
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, _ = integrate.quad(radial, lo, hi, epsabs=0.0, epsrel=1e-12, limit=200)
        total += val
    return math.sqrt(surface * total)
