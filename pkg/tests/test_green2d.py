import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lattice_interp import green2d as g2
from lattice_interp import lattice as lat
from lattice_interp import oracles


@pytest.mark.parametrize("lam", [0.5, 4.0, 20.0, 1e-3])
def test_f2_against_fourier(lam):
    assert g2.f2(lam) == pytest.approx(oracles.fourier_green0_2d(lam), abs=1e-8)
    assert g2.f2(lam) == pytest.approx(oracles.single_integral_green0_2d(lam), rel=1e-11)


@pytest.mark.parametrize("lam", [2.0, 4.0, -12.0])
def test_norms_against_lattice(lam):
    f, g, h, _ = lat.green_norms(lat.DiffOperatorSpec(2, 1, lam), 60)
    assert f == pytest.approx(g2.f2(lam), abs=1e-7)
    assert g == pytest.approx(g2.g2(lam), abs=1e-7)
    assert h == pytest.approx(g2.h2(lam), abs=1e-7)


@given(st.floats(1e-6, 1e4))
@settings(max_examples=100, deadline=None)
def test_identities_and_symmetry(lam):
    lam = -8 - (-8 - lam)  # a reflection pair that is exact in binary64
    f, g, h = g2.f2(lam), g2.g2(lam), g2.h2(lam)
    assert f == pytest.approx(h + lam * g, rel=1e-10)
    assert g2.f2(-8 - lam) == pytest.approx(f, rel=1e-12)
    assert g2.d2_of_lambda(-8 - lam) == pytest.approx(8 - g2.d2_of_lambda(lam), rel=1e-10, abs=1e-12)


def test_g_is_minus_f_prime():
    for lam in (0.3, 3.0, 30.0):
        e = 1e-5 * lam
        fd = -(g2.f2(lam + e) - g2.f2(lam - e)) / (2 * e)
        assert fd == pytest.approx(g2.g2(lam), rel=1e-7)


@given(st.floats(1e-4, 7.9999))
@settings(max_examples=100, deadline=None)
def test_inverse_roundtrip(d):
    if d == 4.0:
        return
    assert g2.d2_of_lambda(g2.lambda2_of_d(d)) == pytest.approx(d, rel=1e-9, abs=1e-12)


def test_d_monotone_and_limits():
    lams = np.logspace(-6, 6, 200)
    ds = [g2.d2_of_lambda(x) for x in lams]
    assert all(a < b for a, b in zip(ds, ds[1:]))
    assert 4 - 1e-4 < ds[-1] < 4
    assert g2.lambda2_of_d(4.0) == math.inf


def test_small_d_lambert_expansion():
    for d, tol in ((1e-3, 0.05), (1e-6, 0.01)):
        assert g2.lambda_expansion_smalld(d) == pytest.approx(g2.lambda2_of_d(d), rel=tol)


def test_V2_against_maximization():
    for d in (2.0, 6.0):
        assert lat.maximize_u0(2, 1, d, 60)[0] == pytest.approx(g2.V2(d), abs=1e-6)
    assert g2.V2(4.0) == 1.0


@given(st.floats(1e-3, 7.999))
@settings(max_examples=100, deadline=None)
def test_V2_below_majorant(d):
    v0, v = g2.V0_majorant(d), g2.V2(d)
    assert v <= v0
    assert g2.V2(8 - d) == pytest.approx(v, rel=1e-9)


def test_log_inequality(rng):
    for _ in range(200):
        u = lat.LatticeSeq.random(2, 15, rng, support=int(rng.integers(1, 15)))
        assert u.center**2 <= g2.log_inequality_rhs(u.norm_sq(), lat.grad_norm_sq(u))
    d = lat.LatticeSeq.delta(2, 1)
    assert g2.log_inequality_rhs(d.norm_sq(), lat.grad_norm_sq(d)) == d.center**2


def test_K2_values():
    assert g2.K2_theta(1.0).constant == 1.0
    assert g2.K2_theta(0.01).constant == pytest.approx(3.205, abs=0.002)
    assert g2.K2_surrogate(0.01) == pytest.approx(3.096, abs=0.002)
    with pytest.raises(ValueError):
        g2.K2_theta(0.0)


def test_K2_surrogate_trend():
    # K2(theta) * 4 pi e theta decreases toward 1 as theta -> 0
    vals = [g2.K2_theta(t).constant * 4 * math.pi * math.e * t for t in (0.2, 0.1, 0.05, 0.01, 0.001)]
    assert all(a > b > 1 for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("theta", [0.2, 0.5, 0.8])
def test_K2_against_lattice_supremum(theta):
    ratio, _ = lat.lattice_sharp_ratio(2, 1, theta, 60, log_bounds=(-6, 8), n_grid=15)
    assert ratio == pytest.approx(g2.K2_theta(theta).constant, abs=1e-6)


def test_K2_inequality_random(rng):
    for th in (0.1, 0.5, 0.9):
        K = g2.K2_theta(th).constant
        for _ in range(100):
            u = lat.LatticeSeq.random(2, 10, rng, support=int(rng.integers(1, 10)))
            assert lat.interpolation_ratio(u, th) <= K
