import math

import mpmath
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from mqshape.special_math import PoleError, binomial, gamma, unit_ball_volume


@pytest.mark.parametrize(
    "x, expected",
    [
        (0.5, math.sqrt(math.pi)),
        (-0.5, -2.0 * math.sqrt(math.pi)),
        (5.0, 24.0),
        (1.0, 1.0),
        (-1.5, 4.0 * math.sqrt(math.pi) / 3.0),
    ],
)
def test_gamma_classical_values(x, expected):
    assert gamma(x) == pytest.approx(expected, rel=1e-13)


@pytest.mark.parametrize("x", [0.0, -1.0, -2.0, -7.0, -3.0 + 1e-14])
def test_gamma_poles(x):
    with pytest.raises(PoleError):
        gamma(x)


def test_gamma_against_mpmath_on_grid():
    # the mpmath value at 30 digits is the oracle
    mpmath.mp.dps = 30
    xs = [k / 8.0 for k in range(-400, 401) if k % 8 != 0 or k > 0]
    worst = 0.0
    for x in xs:
        ref = float(mpmath.gamma(mpmath.mpf(x)))
        worst = max(worst, abs(gamma(x) - ref) / abs(ref))
    assert worst <= 1e-12


@settings(max_examples=1000, deadline=None)
@given(st.floats(min_value=-10.0, max_value=10.0, allow_nan=False))
def test_gamma_recurrence(x):
    assume(abs(x - round(x)) > 1e-6 or x > 0.5)
    assume(abs(x + 1 - round(x + 1)) > 1e-6 or x + 1 > 0.5)
    assume(abs(x) > 1e-6)
    lhs, rhs = gamma(x + 1.0), x * gamma(x)
    assert lhs == pytest.approx(rhs, rel=1e-12)


@pytest.mark.parametrize("n, expected", [(1, 2.0), (2, math.pi), (3, 4.0 * math.pi / 3.0)])
def test_unit_ball_volume_small(n, expected):
    assert unit_ball_volume(n) == pytest.approx(expected, rel=1e-14)


def test_unit_ball_volume_recursion():
    alpha = {0: 1.0, 1: 2.0}
    for n in range(2, 21):
        alpha[n] = alpha[n - 2] * 2.0 * math.pi / n
        assert unit_ball_volume(n) == pytest.approx(alpha[n], rel=1e-12)


def test_binomial_values():
    assert binomial(5, 2) == 10
    assert binomial(9, 0) == 1
    assert binomial(0, 0) == 1


def test_binomial_matches_triangle_lattice_count():
    # count the degree-3 lattice points in a triangle by brute force
    count = sum(1 for i in range(4) for j in range(4) for k in range(4) if i + j + k == 3)
    assert binomial(2 + 3, 2) == count == 10


@given(st.integers(0, 60), st.integers(0, 60))
def test_binomial_symmetry_and_pascal(a, b):
    assume(b <= a)
    assert binomial(a, b) == binomial(a, a - b)
    if 1 <= b <= a - 1:
        assert binomial(a, b) == binomial(a - 1, b - 1) + binomial(a - 1, b)


def test_binomial_overflow_and_domain():
    with pytest.raises(OverflowError):
        binomial(200, 100)
    with pytest.raises(ValueError):
        binomial(3, 4)
