"""Shape-parameter selection for generalized multiquadric interpolation on simplices."""

__version__ = "0.1.0"

from .interpolant import ConditioningError, Interpolant, interpolate
from .kernel import KernelParams, cpd_order
from .mn_optimizer import MNCase, MNResult, classify_case, minimize_mn, mn_curve, mn_value
from .simplex import Simplex, evenly_spaced_points, regular_simplex
from .theory import TheoryConstants, theory_constants

__all__ = [
    "__version__",
    "ConditioningError",
    "Interpolant",
    "interpolate",
    "KernelParams",
    "cpd_order",
    "MNCase",
    "MNResult",
    "classify_case",
    "minimize_mn",
    "mn_curve",
    "mn_value",
    "Simplex",
    "evenly_spaced_points",
    "regular_simplex",
    "TheoryConstants",
    "theory_constants",
]
