import math

import numpy as np
import pytest

from lattice_interp import fourier_side as fs
from lattice_interp import greennd as gn
from lattice_interp import lattice as lat
from lattice_interp import oracles


def test_K3_zero_three_routes():
    a, b, c = gn.f3(0.0), gn.watson_K3(), fs.cauchy_schwarz_Kd0(3)
    assert a == pytest.approx(0.2527, abs=1e-4)
    assert max(a, b, c) - min(a, b, c) < 1e-6
    assert 2 * math.pi**2 * a == pytest.approx(4.9887, abs=1e-3)


def test_K3_zero_against_watson_gamma_product():
    # sqrt(6)/(32 pi^3) Gamma(1/24) Gamma(5/24) Gamma(7/24) Gamma(11/24) / 6
    g = math.gamma
    watson = math.sqrt(6) / (32 * math.pi**3) * g(1 / 24) * g(5 / 24) * g(7 / 24) * g(11 / 24)
    assert gn.f3(0.0) == pytest.approx(watson / 6, rel=1e-12)


@pytest.mark.parametrize("lam", [0.0, 0.1, 1.0, 6.0, 40.0])
def test_f3_against_laplace_bessel(lam):
    assert gn.f3(lam) == pytest.approx(oracles.laplace_bessel_green0(3, lam), rel=1e-9)


@pytest.mark.parametrize("dim", [4, 5])
def test_higher_dims_against_laplace_bessel(dim):
    for lam in (0.0, 1.0):
        assert gn.green_origin(dim, lam) == pytest.approx(oracles.laplace_bessel_green0(dim, lam), rel=1e-6)


def test_f3_against_lattice():
    f, g, h, _ = lat.green_norms(lat.DiffOperatorSpec(3, 1, 2.0), 20)
    assert f == pytest.approx(gn.f3(2.0), abs=1e-9)
    assert g == pytest.approx(gn.g3(2.0), abs=1e-9)
    assert h == pytest.approx(gn.h3(2.0), abs=1e-9)


def test_f3_shape():
    lams = np.linspace(0, 30, 40)
    vals = [gn.f3(x) for x in lams]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    # moments of the symbol: 1/lambda - 6/lambda^2 + 42/lambda^3
    assert 100 * gn.f3(100.0) == pytest.approx(1 - 0.06 + 0.0042, abs=1e-3)


def test_g_is_minus_f_prime():
    for lam in (0.5, 5.0):
        e = 1e-5 * lam
        fd = -(gn.f3(lam + e) - gn.f3(lam - e)) / (2 * e)
        assert fd == pytest.approx(gn.g3(lam), rel=1e-6)


def test_grad_norm_of_G0():
    assert gn.grad_green0_norm_sq(3) == pytest.approx(gn.f3(0.0), rel=1e-15)


def test_K3_theta_limits():
    assert gn.K3_theta(0.0).constant == gn.Kd0(3)
    assert gn.K3_theta(1.0).constant == 1.0
    assert gn.K3_theta(1e-3).constant == pytest.approx(gn.Kd0(3), rel=0.01)
    assert gn.K3_theta(0.999).constant == pytest.approx(1.0, abs=2e-3)


def test_K3_theta_monotone():
    vals = [gn.K3_theta(t).constant for t in np.linspace(0, 1, 11)]
    assert all(a < b for a, b in zip(vals, vals[1:]))


@pytest.mark.slow
def test_K3_half_against_lattice():
    res = gn.K3_theta(0.5)
    G = lat.green_solve(lat.DiffOperatorSpec(3, 1, res.lambda_star), 30)
    assert lat.interpolation_ratio(G, 0.5) == pytest.approx(res.constant, abs=1e-5)


def test_extended_dims_flagged():
    assert "extended" in gn.Kd_theta(4, 0.5).extremal
    assert "extended" not in gn.Kd_theta(3, 0.5).extremal
    with pytest.raises(ValueError):
        gn.Kd_theta(6, 0.5)


def test_K3_zero_inequality_random(rng):
    K = gn.Kd0(3)
    for _ in range(100):
        u = lat.LatticeSeq.random(3, 6, rng, support=int(rng.integers(1, 6)))
        assert u.center**2 <= K * lat.grad_norm_sq(u)


@pytest.mark.parametrize("dim", [4, 5])
def test_extended_constant_against_laplace_route(dim):
    from scipy.optimize import minimize_scalar

    from lattice_interp._numerics import theta_prefactor

    th = 0.5
    r = minimize_scalar(
        lambda s: -(th * s + math.log(oracles.laplace_bessel_green0(dim, math.exp(s)))),
        bounds=(-5, 8), method="bounded", options={"xatol": 1e-10},
    )
    assert gn.Kd_theta(dim, th).constant == pytest.approx(theta_prefactor(th) * math.exp(-r.fun), rel=1e-8)
