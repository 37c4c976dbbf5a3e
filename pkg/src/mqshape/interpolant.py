"""Polynomial-augmented kernel interpolation on a simplex lattice.

The interpolant is ``s(x) = sum_i c_i h(x - x_i) + p(x)`` with ``p`` of
degree <= m - 1.  Coefficients come from the symmetric saddle-point system

    [ A   P ] [c]   [f]
    [ P^T 0 ] [b] = [0]

with ``A[j, i] = h(x_j - x_i)`` and ``P[j, i] = p_i(x_j)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
import scipy.linalg

from .kernel import KernelParams, PolyBasis, h_of_sqdist, poly_basis
from .simplex import CenterSet, evenly_spaced_points

__all__ = [
    "ConditioningError",
    "LinearSystem",
    "Interpolant",
    "assemble_system",
    "solve",
    "interpolate",
    "evaluate",
    "max_error_on_lattice",
    "COND_LIMIT",
    "RESIDUAL_TOL",
]

COND_LIMIT = 1e15
RESIDUAL_TOL = 1e-8


class ConditioningError(ArithmeticError):
    """The interpolation matrix is numerically singular."""

    def __init__(self, message: str, cond_estimate: float):
        super().__init__(message)
        self.cond_estimate = cond_estimate


def _sqdist(x, y) -> np.ndarray:
    diff = x[:, None, :] - y[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


@dataclass(frozen=True, eq=False)
class LinearSystem:
    matrix: np.ndarray
    rhs: np.ndarray
    centers: CenterSet
    kernel: KernelParams
    poly: PolyBasis
    values: np.ndarray

    @property
    def N(self) -> int:
        return len(self.centers)


@dataclass(frozen=True, eq=False)
class Interpolant:
    kernel: KernelParams
    centers: CenterSet
    kernel_coeffs: np.ndarray
    poly_coeffs: np.ndarray
    poly: PolyBasis
    values: np.ndarray = field(repr=False)
    cond_estimate: float = float("nan")

    def __call__(self, x) -> np.ndarray:
        return evaluate(self, x)

    def moment_residual(self) -> float:
        """max_j |sum_i c_i p_j(x_i)|, relative to sum_i |c_i|."""
        if self.poly.Q == 0:
            return 0.0
        P = self.poly.evaluate(self.centers.points)
        scale = max(np.abs(self.kernel_coeffs).sum(), np.finfo(float).tiny)
        return float(np.abs(P.T @ self.kernel_coeffs).max() / scale)

    def interpolation_residual(self) -> float:
        """max_j |s(x_j) - f_j|, relative to max(1, max |f_j|)."""
        r = evaluate(self, self.centers.points) - self.values
        return float(np.abs(r).max() / max(1.0, np.abs(self.values).max()))


def assemble_system(centers: CenterSet, k: KernelParams, values) -> LinearSystem:
    values = np.asarray(values, dtype=float).ravel()
    N = len(centers)
    if values.shape != (N,):
        raise ValueError(f"expected {N} data values, got {values.shape[0]}")
    if centers.n != k.n:
        raise ValueError(f"centers live in R^{centers.n} but kernel is set for n={k.n}")
    m = k.m
    if centers.degree < m - 1:
        raise ValueError(
            f"lattice degree {centers.degree} cannot determine polynomials of degree {m - 1}"
        )
    poly = poly_basis(k.n, m)
    Q = poly.Q
    x = np.asarray(centers.points)
    mat = np.zeros((N + Q, N + Q))
    mat[:N, :N] = h_of_sqdist(k, _sqdist(x, x))
    if Q:
        P = poly.evaluate(x)
        mat[:N, N:] = P
        mat[N:, :N] = P.T
    rhs = np.concatenate([values, np.zeros(Q)])
    return LinearSystem(mat, rhs, centers, k, poly, values)


def solve(system: LinearSystem) -> Interpolant:
    """Solve the saddle-point system with a pivoted LDL^T factorization.

    Raises ConditioningError when the 2-norm condition number exceeds 1e15
    or the post-solve relative residual exceeds 1e-8.
    """
    mat, rhs = system.matrix, system.rhs
    cond = float(np.linalg.cond(mat))
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise ConditioningError(
            f"interpolation matrix is numerically singular (cond ~ {cond:.3e})", cond
        )
    sol = scipy.linalg.solve(mat, rhs, assume_a="sym")
    resid = np.abs(mat @ sol - rhs).max()
    scale = np.abs(mat).max() * np.abs(sol).max() + np.abs(rhs).max()
    if scale > 0 and resid > RESIDUAL_TOL * scale:
        raise ConditioningError(
            f"solve residual {resid:.3e} exceeds tolerance (cond ~ {cond:.3e})", cond
        )
    N = system.N
    coeffs, b = sol[:N], sol[N:]
    coeffs.setflags(write=False)
    b.setflags(write=False)
    return Interpolant(
        system.kernel, system.centers, coeffs, b, system.poly, system.values, cond
    )


def interpolate(centers: CenterSet, k: KernelParams, values) -> Interpolant:
    return solve(assemble_system(centers, k, values))


def evaluate(s: Interpolant, x) -> np.ndarray:
    """Evaluate the interpolant at one point (returns a float) or at rows of ``x``."""
    x = np.asarray(x, dtype=float)
    single = x.ndim <= 1 and (x.ndim == 0 or x.shape[0] == s.kernel.n)
    pts = x.reshape(-1, s.kernel.n)
    out = h_of_sqdist(s.kernel, _sqdist(pts, s.centers.points)) @ s.kernel_coeffs
    if s.poly.Q:
        out = out + s.poly.evaluate(pts) @ s.poly_coeffs
    return float(out[0]) if single else out


def max_error_on_lattice(
    s: Interpolant, f: Callable[[np.ndarray], np.ndarray], probe_degree: int
) -> float:
    """max |f - s| over the evenly spaced probe lattice of the same simplex.

    ``f`` takes an (M, n) array of points and returns M values.
    """
    if probe_degree < s.centers.degree:
        raise ValueError(
            f"probe degree {probe_degree} is coarser than the center lattice ({s.centers.degree})"
        )
    probe = evenly_spaced_points(s.centers.simplex, probe_degree).points
    err = np.asarray(f(probe), dtype=float) - evaluate(s, probe)
    return float(np.abs(err).max())
