"""n-simplices, barycentric coordinates and evenly spaced point lattices."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .special_math import binomial

__all__ = [
    "DegenerateSimplexError",
    "Simplex",
    "CenterSet",
    "barycentric_coords",
    "evenly_spaced_points",
    "diameter",
    "regular_simplex",
    "lattice_indices",
]

_DEGENERACY_TOL = 1e-10


class DegenerateSimplexError(ValueError):
    pass


def _max_pairwise_distance(vertices: np.ndarray) -> float:
    best = 0.0
    for i, j in itertools.combinations(range(len(vertices)), 2):
        best = max(best, float(np.linalg.norm(vertices[i] - vertices[j])))
    return best


@dataclass(frozen=True, eq=False)
class Simplex:
    """An n-simplex in R^n given by its n + 1 vertices (one per row)."""

    vertices: np.ndarray

    def __post_init__(self) -> None:
        v = np.array(self.vertices, dtype=float)
        if v.ndim == 1:
            v = v[:, None]
        if v.ndim != 2 or v.shape[0] != v.shape[1] + 1:
            raise DegenerateSimplexError(
                f"an n-simplex needs n+1 vertices in R^n, got shape {v.shape}"
            )
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)
        d = _max_pairwise_distance(v)
        if d <= 0.0:
            raise DegenerateSimplexError("simplex has zero diameter")
        smin = np.linalg.svd(self.edge_matrix, compute_uv=False).min()
        if smin <= _DEGENERACY_TOL * d:
            raise DegenerateSimplexError(
                f"vertices are affinely dependent (smallest singular value {smin:.3e})"
            )
        object.__setattr__(self, "_diameter", d)

    @property
    def n(self) -> int:
        return self.vertices.shape[1]

    @property
    def edge_matrix(self) -> np.ndarray:
        """Columns are the edge vectors v_{i+1} - v_1."""
        return (self.vertices[1:] - self.vertices[0]).T

    @property
    def diameter(self) -> float:
        return self._diameter

    def point(self, bary) -> np.ndarray:
        """Map barycentric coordinates back to a point."""
        return np.asarray(bary, dtype=float) @ self.vertices

    def to_json(self) -> list[list[float]]:
        return self.vertices.tolist()


@dataclass(frozen=True, eq=False)
class CenterSet:
    simplex: Simplex
    degree: int
    points: np.ndarray = field(repr=False)
    barycentric_indices: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def n(self) -> int:
        return self.simplex.n

    def permuted(self, order) -> "CenterSet":
        order = np.asarray(order)
        return CenterSet(
            self.simplex, self.degree, self.points[order], self.barycentric_indices[order]
        )


def barycentric_coords(s: Simplex, x) -> np.ndarray:
    """Barycentric coordinates of ``x`` with respect to ``s``.

    Coordinates sum to one; they go negative for points outside the simplex.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    lam = np.linalg.solve(s.edge_matrix, x - s.vertices[0])
    return np.concatenate(([1.0 - lam.sum()], lam))


def lattice_indices(n: int, l: int) -> np.ndarray:
    """All (k_1, ..., k_{n+1}) >= 0 with sum l, lexicographically decreasing."""

    def compositions(total: int, parts: int):
        if parts == 1:
            yield (total,)
            return
        for first in range(total, -1, -1):
            for rest in compositions(total - first, parts - 1):
                yield (first,) + rest

    return np.array(list(compositions(l, n + 1)), dtype=np.int64)


def evenly_spaced_points(s: Simplex, l: int) -> CenterSet:
    """The evenly spaced points of degree ``l`` in ``s``; C(n+l, n) of them."""
    if l < 1:
        raise ValueError(f"lattice degree must be >= 1, got {l}")
    binomial(s.n + l, s.n)  # raises on count overflow before enumerating
    idx = lattice_indices(s.n, l)
    points = (idx @ s.vertices) / l
    idx.setflags(write=False)
    points.setflags(write=False)
    return CenterSet(s, l, points, idx)


def diameter(s: Simplex) -> float:
    return s.diameter


def regular_simplex(n: int, d: float) -> Simplex:
    """Regular n-simplex with edge length ``d`` and first vertex at the origin.

    Each new vertex sits above the centroid of the previous ones at height
    d * sqrt((k+1) / (2k)), along a fresh coordinate axis.
    """
    if n < 1 or d <= 0:
        raise ValueError(f"need n >= 1 and d > 0, got n={n}, d={d}")
    v = np.zeros((n + 1, n))
    for k in range(1, n + 1):
        v[k] = v[:k].mean(axis=0)
        v[k, k - 1] = d * np.sqrt((k + 1) / (2.0 * k))
    return Simplex(v)
