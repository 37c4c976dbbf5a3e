import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mqshape.kernel import InvalidBetaError, KernelParams, cpd_order, h_eval, poly_basis
from mqshape.special_math import binomial

SQRT_PI = math.sqrt(math.pi)


@pytest.mark.parametrize("beta, m", [(-1.0, 0), (1.0, 1), (3.0, 2), (-3.5, 0), (0.2, 1), (5.0, 3)])
def test_cpd_order(beta, m):
    assert cpd_order(beta) == m


@pytest.mark.parametrize("beta", [0.0, 2.0, 4.0, 2.0 + 1e-13])
def test_even_beta_rejected(beta):
    with pytest.raises(InvalidBetaError):
        KernelParams(beta, 1.0, 2)


def test_negative_even_beta_allowed():
    assert KernelParams(-2.0, 1.0, 1).m == 0


def test_h_eval_examples():
    assert h_eval(KernelParams(-1.0, 1.0, 2), [0.0, 0.0]) == pytest.approx(SQRT_PI, rel=1e-14)
    assert h_eval(KernelParams(-1.0, 3.0, 2), [4.0, 0.0]) == pytest.approx(SQRT_PI / 5, rel=1e-14)
    # Gamma(-1/2) = -2 sqrt(pi) by reflection
    assert h_eval(KernelParams(1.0, 1.0, 1), [0.0]) == pytest.approx(-2.0 * SQRT_PI, rel=1e-13)


def test_h_sign_negative_for_beta_between_zero_and_two():
    k = KernelParams(1.5, 0.7, 2)
    assert h_eval(k, [0.3, 0.1]) < 0


@given(st.floats(0.0, 5.0), st.floats(0.0, 2 * math.pi))
def test_h_is_radial(r, theta):
    k = KernelParams(-1.0, 0.8, 2)
    a = h_eval(k, [r, 0.0])
    b = h_eval(k, [r * math.cos(theta), r * math.sin(theta)])
    assert a == pytest.approx(b, rel=1e-13)


@pytest.mark.parametrize("beta", [-1.0, -3.0, 1.0, 3.0])
def test_h_monotone_in_radius(beta):
    k = KernelParams(beta, 0.5, 1)
    vals = np.array([h_eval(k, [r]) for r in np.linspace(0.0, 3.0, 200)])
    mags = np.abs(vals)
    if beta < 0:
        assert np.all(np.diff(mags) < 0)
    else:
        assert np.all(np.diff(mags) > 0)


def test_poly_basis_examples():
    assert poly_basis(2, 0).Q == 0
    b1 = poly_basis(2, 1)
    assert b1.Q == 1 and b1.exponents.tolist() == [[0, 0]]
    b2 = poly_basis(2, 2)
    assert b2.exponents.tolist() == [[0, 0], [1, 0], [0, 1]]


@pytest.mark.parametrize("n, m", [(n, m) for n in range(1, 5) for m in range(1, 5)])
def test_poly_basis_dimension(n, m):
    assert poly_basis(n, m).Q == binomial(n + m - 1, n)


def test_poly_basis_evaluate():
    P = poly_basis(2, 3).evaluate([[2.0, 3.0]])
    # 1, x, y, x^2, xy, y^2 in graded-lex order
    assert P.tolist() == [[1.0, 2.0, 3.0, 4.0, 6.0, 9.0]]
