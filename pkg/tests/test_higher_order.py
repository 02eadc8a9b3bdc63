import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lattice_interp import green1d as g1
from lattice_interp import higher_order as ho
from lattice_interp import lattice as lat
from lattice_interp import oracles


@pytest.mark.parametrize("lam", [1e-3, 1.0, 16 / 3, 100.0, -16.5, -17.0, -200.0])
def test_f12_against_symbol_quadrature(lam):
    assert ho.f12(lam) == pytest.approx(oracles.quad_green0_order2(lam), rel=1e-10)


@pytest.mark.parametrize("lam", [0.7, 16 / 3, -20.0])
def test_norms_against_lattice(lam):
    f, g, h, G = lat.green_norms(lat.DiffOperatorSpec(1, 2, lam), 80)
    assert f == pytest.approx(ho.f12(lam), rel=1e-10)
    assert g == pytest.approx(ho.g12(lam), rel=1e-9)
    assert h == pytest.approx(ho.h12(lam), rel=1e-9)
    if lam > 0:
        for n in range(-6, 7):
            assert G[n] == pytest.approx(ho.green12_n(lam, n), abs=1e-11)


def test_dlogf_against_finite_difference():
    for lam in (0.5, 16 / 3, -18.0, -80.0):
        e = 1e-6 * abs(lam)
        fd = (math.log(ho.f12(lam + e)) - math.log(ho.f12(lam - e))) / (2 * e)
        assert fd == pytest.approx(ho.dlogf12(lam), rel=1e-6)


def test_green12_recurrence():
    lam = 16 / 3
    G = np.array([ho.green12_n(lam, n) for n in range(-24, 25)])
    r = np.convolve(G, [1, -4, 6, -4, 1], mode="valid") + lam * G[2:-2]
    r[22] -= 1
    assert np.max(np.abs(r)) < 1e-10
    # oscillation with decaying amplitude
    signs = np.sign(G[24:37])
    assert np.any(signs[1:] != signs[:-1])
    assert abs(G[36]) < 1e-6 * abs(G[24])


def test_char_roots():
    q1, q2, q3, q4 = ho.char_roots_12(3.0)
    assert abs(q1) < 1 and abs(q1 * q2 - 1) < 1e-12
    for q in (q1, q2, q3, q4):
        assert abs((q - 1) ** 4 / q**2 + 3.0) < 1e-10


def test_K12_exact_point():
    res = ho.K12_theta(0.75)
    assert res.lambda_star == 16 / 3
    assert res.constant == pytest.approx(math.sqrt(2) / 2, rel=1e-15)
    assert ho.K12_theta(1.0).constant == 1.0
    with pytest.raises(ValueError):
        ho.K12_theta(0.7)


@pytest.mark.parametrize("theta", [0.8, 0.9, 0.97])
def test_K12_against_lattice_supremum(theta):
    ratio, _ = lat.lattice_sharp_ratio(1, 2, theta, 80)
    assert ratio == pytest.approx(ho.K12_theta(theta).constant, abs=1e-9)


def test_V12():
    assert ho.V12(6.0) == 1.0
    assert abs(ho.V12(2.0) - ho.V12(14.0)) > 1e-3
    for d in (3.0, 10.0):
        assert ho.V12(d) == pytest.approx(lat.maximize_u0(1, 2, d, 80)[0], abs=1e-8)


@given(st.floats(0.01, 15.99))
@settings(max_examples=60, deadline=None)
def test_lambda12_roundtrip(d):
    if d == 6.0:
        return
    assert ho.d12_of_lambda(ho.lambda12_of_d(d)) == pytest.approx(d, rel=1e-9)


def test_taikov_values():
    assert ho.taikov_C1n(1) == pytest.approx(1.0, rel=1e-15)
    assert ho.taikov_C1n(2) == pytest.approx((4 / 27) ** 0.25, rel=1e-14)


def test_K1n_reproduces_closed_forms():
    assert ho.K1n_theta(1, 0.5).constant == pytest.approx(1.0, abs=1e-9)
    assert ho.K1n_theta(1, 0.8).constant == pytest.approx(g1.K1_theta(0.8).constant, rel=1e-9)
    assert ho.K1n_theta(2, 0.75).constant == pytest.approx(math.sqrt(0.5), rel=1e-9)
    assert ho.K1n_theta(2, 0.9).constant == pytest.approx(ho.K12_theta(0.9).constant, rel=1e-9)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_discrete_exceeds_continuous(n):
    th = ho.theta_min(n)
    assert ho.K1n_theta(n, th).constant > ho.taikov_C1n(n)


def test_K1n_order3_against_lattice():
    th = 0.9
    ratio, _ = lat.lattice_sharp_ratio(1, 3, th, 80)
    assert ratio == pytest.approx(ho.K1n_theta(3, th).constant, abs=1e-8)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_S_limit(n):
    assert ho.S_scaled(n, 1e-7) == pytest.approx(math.pi / (2 * n * math.sin(math.pi / (2 * n))), rel=1e-3)


def test_S_direction():
    assert ho.S_scaled(2, 1e-3) > ho.S_scaled(2, 0.0)
    assert ho.S_scaled(1, 1e-3) < ho.S_scaled(1, 0.0)


def test_periodic():
    assert ho.periodic_C11(0.0) == pytest.approx(math.pi / 6, rel=1e-15)
    assert ho.periodic_C11(0.5) == pytest.approx(1.0, rel=1e-12)
    for lam in (1e-4, 0.3, 5.0):
        assert ho.periodic_G(lam) == pytest.approx(oracles.periodic_G_series(lam), abs=1e-6)
    with pytest.raises(ValueError):
        ho.periodic_C11(0.6)


def test_order2_inequality_random(rng):
    for th in (0.75, 0.85, 1.0):
        K = ho.K12_theta(th).constant
        for _ in range(200):
            u = lat.LatticeSeq.random(1, 20, rng, support=int(rng.integers(1, 20)))
            assert lat.interpolation_ratio(u, th, 2) <= K * (1 + 1e-12)
