import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from superfactor.exactfun import (
    AngularFunction,
    AzimuthalMode,
    RadialFunction,
    RepresentationError,
    SeparatedState,
    angular_mul_cotan,
    angular_proportional,
    angular_residual,
    radial_norm_sq,
    radial_proportional,
    radial_residual,
)

fracs = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def radial(draw, alpha=F(0), beta=F(-1, 4)):
    coeffs = draw(st.lists(fracs, min_size=1, max_size=5))
    s = draw(st.integers(0, 3))
    return RadialFunction(s, tuple(coeffs), alpha, beta)


@st.composite
def angular(draw):
    return AngularFunction(draw(st.integers(0, 3)), tuple(draw(st.lists(fracs, min_size=1, max_size=5))))


def num_deriv(f, x, h=1e-5):
    return (f(x + h) - f(x - h)) / (2 * h)


R = np.linspace(0.3, 4.0, 9)
TH = np.linspace(0.2, math.pi - 0.2, 9)


def test_canonical_form_absorbs_leading_zeros():
    f = RadialFunction(1, (0, 0, 3, 0), 0, 0)
    assert f.s == 3 and f.coeffs == (3,)
    assert RadialFunction(2, (0,), 0, 0).is_zero


def test_exact_stays_exact():
    f = RadialFunction(1, (F(1, 3), F(2)), F(-1, 2), 0)
    assert f.exact and f.derivative().exact
    assert not f.to_float().exact


@given(radial())
def test_radial_derivative_matches_numeric(f):
    np.testing.assert_allclose(f.derivative()(R), num_deriv(f, R), rtol=1e-6, atol=1e-8)


@given(radial(alpha=F(-1, 2), beta=F(0)))
def test_radial_derivative_with_linear_exponent(f):
    np.testing.assert_allclose(f.derivative()(R), num_deriv(f, R), rtol=1e-6, atol=1e-8)


@given(radial(), st.sampled_from([F(3, 2), F(2, 3), F(5, 4)]))
def test_scale_arg_is_exact_dilation(f, lam):
    g = f.scale_arg(lam)
    np.testing.assert_allclose(g(R), f(float(lam) * R), rtol=1e-12, atol=1e-14)
    assert g.exact


@given(radial(), radial())
def test_addition_pointwise(f, g):
    np.testing.assert_allclose((f + g)(R), f(R) + g(R), rtol=1e-12, atol=1e-12)


def test_incompatible_exponents_refused():
    with pytest.raises(RepresentationError):
        RadialFunction(0, (1,), -1, 0) + RadialFunction(0, (1,), 0, 0)


def test_norm_against_quadrature():
    f = RadialFunction(1, (1.0, -0.5), 0.0, -0.25)
    want, _ = integrate.quad(lambda r: abs(f(r)) ** 2 * r * r, 0, np.inf)
    assert radial_norm_sq(f) == pytest.approx(want, rel=1e-10)
    # hydrogen ground state with k = 1: int r^2 e^{-r} dr = 2
    assert radial_norm_sq(RadialFunction(0, (1,), F(-1, 2), 0)) == pytest.approx(2.0, rel=1e-12)


def test_proportional_and_residual():
    f = RadialFunction(0, (F(1), F(2)), 0, F(-1, 4))
    assert radial_proportional(f * F(-3, 2), f) == F(-3, 2)
    assert radial_residual(f, f * 1) == 0
    assert radial_proportional(f, RadialFunction(0, (F(1), F(3)), 0, F(-1, 4))) is None


@given(radial())
def test_radial_json_roundtrip(f):
    assert RadialFunction.from_json(f.to_json()) == f


@given(angular())
def test_angular_derivative_matches_numeric(g):
    np.testing.assert_allclose(g.derivative()(TH), num_deriv(g, TH), rtol=1e-6, atol=1e-8)


@given(angular())
def test_angular_json_roundtrip(g):
    h = AngularFunction.from_json(g.to_json())
    assert angular_residual(h, g) == 0


def test_cotangent_multiplication():
    g = AngularFunction(2, (F(1), F(1)))
    np.testing.assert_allclose(angular_mul_cotan(g, 3)(TH), 3 * g(TH) / np.tan(TH), rtol=1e-12)
    with pytest.raises(RepresentationError):
        angular_mul_cotan(AngularFunction(0, (F(1),)))  # cot(theta) is outside the class


def test_parity_forms_compare_equal():
    # sin^2 = 1 - cos^2
    a = AngularFunction(2, (F(1),))
    b = AngularFunction(0, (F(1), 0, F(-1)))
    assert angular_residual(a, b) == 0
    assert angular_proportional(a * 5, b) == 5
    assert b.factored().a == 2


def test_angular_norm_exact():
    # int_0^pi sin^2 * sin dtheta = 4/3
    assert AngularFunction(1, (F(1),)).norm_sq() == pytest.approx(4 / 3, rel=1e-15)


def test_separated_state_labels():
    f = RadialFunction(0, (1,), 0, F(-1, 4))
    g = AngularFunction(0, (1,))
    with pytest.raises(ValueError):
        SeparatedState(f, g, AzimuthalMode(1), 0, 0, 1)
    st0 = SeparatedState(f, g, AzimuthalMode(0), 0, 0, 0)
    assert st0.to_json()["labels"] == {"n": 0, "ell": 0, "m": 0}
    nrm = st0.normalized()
    assert radial_norm_sq(nrm.radial) == pytest.approx(1.0, rel=1e-10)
