"""Generalized multiquadric kernel h(x) = Gamma(-beta/2) (c^2 + |x|^2)^(beta/2).

``beta < 0`` gives inverse multiquadrics, ``beta > 0`` multiquadrics; the
Gamma prefactor fixes the sign so that the kernel is conditionally positive
definite of order ``m = max(ceil(beta/2), 0)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations_with_replacement

import numpy as np

from .special_math import binomial, gamma

__all__ = [
    "InvalidBetaError",
    "KernelParams",
    "PolyBasis",
    "check_beta",
    "cpd_order",
    "h_eval",
    "h_of_sqdist",
    "poly_basis",
]

_BETA_TOL = 1e-12


class InvalidBetaError(ValueError):
    """beta is a non-negative even integer, where the kernel is a polynomial."""


def check_beta(beta: float) -> float:
    beta = float(beta)
    if not math.isfinite(beta):
        raise InvalidBetaError(f"beta must be finite, got {beta}")
    half = beta / 2.0
    if half > -_BETA_TOL and abs(half - round(half)) * 2.0 < _BETA_TOL:
        raise InvalidBetaError(
            f"beta={beta:g} is a non-negative even integer; the kernel is undefined there"
        )
    return beta


def cpd_order(beta: float) -> int:
    """Order of conditional positive definiteness, max(ceil(beta/2), 0)."""
    beta = check_beta(beta)
    return max(math.ceil(beta / 2.0), 0)


@dataclass(frozen=True)
class KernelParams:
    beta: float
    c: float
    n: int

    def __post_init__(self) -> None:
        check_beta(self.beta)
        if not self.c > 0:
            raise ValueError(f"shape parameter c must be positive, got {self.c}")
        if self.n < 1:
            raise ValueError(f"dimension must be >= 1, got {self.n}")

    @property
    def m(self) -> int:
        return cpd_order(self.beta)

    @property
    def prefactor(self) -> float:
        return gamma(-self.beta / 2.0)


def h_of_sqdist(k: KernelParams, r2) -> np.ndarray:
    """Kernel value as a function of the squared distance (vectorized)."""
    r2 = np.asarray(r2, dtype=float)
    return k.prefactor * (k.c * k.c + r2) ** (k.beta / 2.0)


def h_eval(k: KernelParams, x) -> float:
    x = np.atleast_1d(np.asarray(x, dtype=float))
    return float(h_of_sqdist(k, x @ x))


@dataclass(frozen=True, eq=False)
class PolyBasis:
    """Monomial basis of polynomials of degree <= m - 1 in n variables."""

    n: int
    degree: int
    exponents: np.ndarray

    @property
    def Q(self) -> int:
        return len(self.exponents)

    def evaluate(self, x) -> np.ndarray:
        """Matrix P with P[j, i] = p_i(x_j) for points x of shape (M, n)."""
        x = np.atleast_2d(np.asarray(x, dtype=float))
        if self.Q == 0:
            return np.zeros((len(x), 0))
        return np.prod(x[:, None, :] ** self.exponents[None, :, :], axis=2)


def poly_basis(n: int, m: int) -> PolyBasis:
    """Graded-lexicographic monomials of total degree <= m - 1 (empty for m = 0)."""
    if n < 1 or m < 0:
        raise ValueError(f"need n >= 1 and m >= 0, got n={n}, m={m}")
    exps = []
    for deg in range(m):
        block = []
        for combo in combinations_with_replacement(range(n), deg):
            e = [0] * n
            for var in combo:
                e[var] += 1
            block.append(tuple(e))
        exps.extend(sorted(block, reverse=True))
    arr = np.array(exps, dtype=np.int64).reshape(len(exps), n)
    if m >= 1:
        assert len(arr) == binomial(n + m - 1, n)
    arr.setflags(write=False)
    return PolyBasis(n, m - 1, arr)
