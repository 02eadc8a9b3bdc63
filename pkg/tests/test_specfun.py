import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import ellipe, ellipk, ellipkm1

from lattice_interp import oracles
from lattice_interp import specfun as sf


@given(st.floats(0.0, 0.999999))
@settings(max_examples=200, deadline=None)
def test_K_E_match_scipy(k):
    # scipy uses the parameter m = k^2; 1 - m is formed without cancellation
    assert sf.elliptic_K(k) == pytest.approx(ellipkm1((1 - k) * (1 + k)), rel=1e-13)
    assert sf.elliptic_E(k) == pytest.approx(ellipe(k * k), rel=1e-13)


@given(st.floats(0.01, 0.99))
@settings(max_examples=100, deadline=None)
def test_legendre_relation(k):
    kp = math.sqrt(1 - k * k)
    K, E, Kp, Ep = sf.elliptic_K(k), sf.elliptic_E(k), sf.elliptic_K(kp), sf.elliptic_E(kp)
    assert E * Kp + Ep * K - K * Kp == pytest.approx(math.pi / 2, abs=1e-12)


def test_against_quadrature():
    for k in (0.1, 0.5, 0.9, 0.999):
        assert sf.elliptic_K(k) == pytest.approx(oracles.quad_elliptic_K(k), rel=1e-12)
        assert sf.elliptic_E(k) == pytest.approx(oracles.quad_elliptic_E(k), rel=1e-12)


def test_special_values():
    assert sf.elliptic_K(0.0) == pytest.approx(math.pi / 2, rel=1e-15)
    assert sf.elliptic_E(1.0) == 1.0
    with pytest.raises(ValueError):
        sf.elliptic_K(1.0)


def test_from_complement_near_one():
    # K - E at k -> 1 stays accurate through the complementary modulus
    kp = 1e-9
    K, E, KmE = sf.elliptic_KE_from_complement(kp)
    assert K == pytest.approx(ellipkm1(kp * kp), rel=1e-14)
    assert E == pytest.approx(1.0, abs=1e-15)
    assert KmE == pytest.approx(ellipkm1(kp * kp) - ellipe(1 - kp * kp), rel=1e-14)
    # direct subtraction at moderate k agrees
    K, E, KmE = sf.elliptic_KE_from_complement(0.6)
    assert KmE == pytest.approx(K - E, rel=1e-14)


def test_vectorized():
    ks = np.linspace(0, 0.9, 7)
    assert np.allclose(sf.elliptic_K(ks), ellipk(ks**2), rtol=1e-13)


@given(st.floats(-1 / math.e + 1e-14, -1e-300))
@settings(max_examples=200, deadline=None)
def test_lambert_lower_branch(z):
    w = sf.lambert_w_m1(z)
    assert w <= -1.0
    assert w * math.exp(w) == pytest.approx(z, rel=1e-10)


def test_lambert_known():
    assert sf.lambert_w_m1(-math.exp(-1)) == pytest.approx(-1.0, abs=1e-6)
    assert sf.lambert_w_m1(-3 * math.exp(-3)) == pytest.approx(-3.0, rel=1e-13)
    for z in (0.0, 0.1, -0.5):
        with pytest.raises(ValueError):
            sf.lambert_w_m1(z)


def test_gamma():
    assert sf.gamma_fn(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-15)
    assert sf.gamma_fn(5) == pytest.approx(24.0, rel=1e-15)
