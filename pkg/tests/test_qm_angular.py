import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.special import lpmv

from superfactor import qm_angular as qa
from superfactor.exactfun import AngularFunction, AzimuthalMode, angular_proportional, angular_residual
from superfactor.verify import legendre_oracle

TH = np.linspace(0.15, math.pi - 0.15, 23)
labels = [(l, m) for l in range(6) for m in range(-l, l + 1)]


@pytest.mark.parametrize("ell,m", labels)
def test_harmonic_matches_scipy_lpmv(ell, m):
    """Generated polar factor is a constant multiple of P_l^|m|(cos theta)."""
    g = qa.build_spherical_harmonic(ell, m).theta(TH)
    ref = lpmv(abs(m), ell, np.cos(TH))
    c = np.vdot(ref, g) / np.vdot(ref, ref)
    assert abs(c) > 0
    assert np.max(np.abs(g - c * ref)) < 1e-12 * np.max(np.abs(g))


@pytest.mark.parametrize("ell,m", labels)
def test_harmonic_proportional_to_rodrigues(ell, m):
    g = qa.build_spherical_harmonic(ell, m).theta
    assert angular_proportional(g, legendre_oracle(ell, m)) is not None


@pytest.mark.parametrize("ell,m", labels)
def test_harmonic_eigenvalues(ell, m):
    g = qa.build_spherical_harmonic(ell, m).theta
    assert angular_residual(qa.apply_l2m(g, m), g * (ell * (ell + 1))) == 0
    assert angular_residual(qa.apply_cl(g, ell), g * (-m * m)) == 0


def test_normalized_harmonic_has_unit_norm():
    pair = qa.build_spherical_harmonic(3, 2, normalize=True)
    assert 2 * math.pi * pair.theta.norm_sq() == pytest.approx(1.0, rel=1e-12)


def test_lz_and_phi_ladder():
    assert qa.apply_lz(AzimuthalMode(3))[0] == 3
    assert qa.ladder_phi(AzimuthalMode(3), "-").m == 2
    assert AzimuthalMode(1)(math.pi / 2) == pytest.approx(1j)


def test_shift_theta_boundaries():
    # both d+_{l+1} and lambda-_l annihilate the top state P_l^l
    for ell in range(4):
        top = qa.build_spherical_harmonic(ell, ell).theta
        assert qa.shift_theta(top, ell + 1, +1).is_zero
        assert qa.ladder_theta(top, ell, -1).is_zero


def test_angular_symmetry_moves_m_keeps_ell():
    pair = qa.build_spherical_harmonic(3, 1)
    up = qa.angular_symmetry(pair, +1)
    assert (up.ell, up.m) == (3, 2)
    assert angular_proportional(up.theta, qa.build_spherical_harmonic(3, 2).theta) is not None
    down = qa.angular_symmetry(pair, -1)
    assert angular_proportional(down.theta, qa.build_spherical_harmonic(3, 0).theta) is not None
    assert qa.angular_symmetry(qa.build_spherical_harmonic(2, 2), +1).is_zero


def test_theta_ladder_moves_ell():
    p = qa.build_spherical_harmonic(2, 0).theta
    assert angular_proportional(qa.ladder_theta(p, 3, +1), qa.build_spherical_harmonic(3, 0).theta) is not None
    assert angular_proportional(qa.ladder_theta(p, 2, -1), qa.build_spherical_harmonic(1, 0).theta) is not None


def test_invalid_labels():
    with pytest.raises(qa.InvalidLabelError):
        qa.build_spherical_harmonic(2, 3)
    with pytest.raises(ValueError):
        qa.shift_theta(AngularFunction(1, (1,)), 1, "up")


@st.composite
def sample(draw, a):
    coeffs = draw(st.lists(st.fractions(-4, 4, max_denominator=5), min_size=1, max_size=5))
    return AngularFunction(a, tuple(coeffs))


@given(st.integers(1, 4), st.data())
def test_shift_intertwines_l2(m, data):
    """L2_m d+_m = d+_m L2_(m-1) as an action on sin^(m-1) * poly."""
    g = data.draw(sample(m - 1))
    lhs = qa.apply_l2m(qa.shift_theta(g, m, +1), m)
    rhs = qa.shift_theta(qa.apply_l2m(g, m - 1), m, +1)
    assert angular_residual(lhs, rhs) == 0 or (lhs.is_zero and rhs.is_zero)


@given(st.integers(1, 4), st.data())
def test_shift_factorization(m, data):
    """d-_m d+_m = L2_(m-1) - m(m-1)."""
    g = data.draw(sample(m - 1))
    lhs = qa.shift_theta(qa.shift_theta(g, m, +1), m, -1)
    rhs = qa.apply_l2m(g, m - 1) + g * (-m * (m - 1))
    assert angular_residual(lhs, rhs) == 0 or (lhs.is_zero and rhs.is_zero)


@given(st.integers(1, 5), st.data())
def test_theta_ladder_factorizes_cl(ell, data):
    """C_l = lambda+_l lambda-_l - l^2."""
    g = data.draw(sample(data.draw(st.integers(0, 3))))
    lhs = qa.ladder_theta(qa.ladder_theta(g, ell, -1), ell, +1)
    rhs = qa.apply_cl(g, ell) + g * (ell * ell)
    assert angular_residual(lhs, rhs) == 0 or (lhs.is_zero and rhs.is_zero)


@pytest.mark.parametrize("ell", range(1, 5))
def test_substituted_commutator_on_eigenfunctions(ell):
    """[L2, lambda+-] = +-2l lambda+- holds after L^2 -> l(l+1), on P_l^m."""
    for m in range(ell + 1):
        g = qa.build_spherical_harmonic(ell, m).theta
        up = qa.ladder_theta(g, ell + 1, +1)
        lhs = qa.apply_l2m(up, m) + up * (-ell * (ell + 1))
        assert angular_residual(lhs, up * (2 * (ell + 1))) == 0 or up.is_zero
        if ell > m:
            dn = qa.ladder_theta(g, ell, -1)
            lhs = qa.apply_l2m(dn, m) + dn * (-ell * (ell + 1))
            assert angular_residual(lhs, dn * (-2 * ell)) == 0


def test_negative_m_is_conjugate_pair():
    pos, neg = qa.build_spherical_harmonic(2, 1), qa.build_spherical_harmonic(2, -1)
    assert neg.mode.m == -1
    assert angular_residual(neg.theta, pos.theta.conj()) == 0


def test_exact_coefficients():
    g = qa.build_spherical_harmonic(4, 2).theta
    assert all(isinstance(c, F) for c in g.coeffs)
