import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from lattice_interp import lattice as lat


def test_seq_validation():
    with pytest.raises(ValueError):
        lat.LatticeSeq(np.zeros(4))
    with pytest.raises(ValueError):
        lat.LatticeSeq(np.zeros((3, 5)))
    with pytest.raises(ValueError):
        lat.LatticeSeq(np.array([0.0, np.nan, 0.0]))
    u = lat.LatticeSeq(np.arange(5.0))
    assert u.radius == 2 and u.center == 2.0 and u[-2] == 0.0 and u[7] == 0.0


def test_spec_rejects_spectrum():
    for lam in (0.0, -2.0, -4.0):
        with pytest.raises(ValueError):
            lat.DiffOperatorSpec(1, 1, lam)
    with pytest.raises(ValueError):
        lat.DiffOperatorSpec(2, 2, 1.0)
    assert lat.DiffOperatorSpec(1, 2, -16.5).sign == -1.0


def test_delta_energies():
    for dim in (1, 2, 3):
        assert lat.grad_norm_sq(lat.LatticeSeq.delta(dim, 2)) == 2.0 * dim
    d = lat.LatticeSeq.delta(1, 4)
    # ||D^n delta||^2 = C(2n, n)
    for n in (1, 2, 3, 4):
        assert lat.diff_norm_sq(d, n) == math.comb(2 * n, n)


@given(arrays(np.float64, 11, elements=st.floats(-10, 10)))
@settings(max_examples=100, deadline=None)
def test_quadratic_form_matches_differences(v):
    u = lat.LatticeSeq(v)
    for order in (1, 2, 3):
        Q = lat.quadratic_form_matrix(1, order, 5)
        assert v @ (Q @ v) == pytest.approx(lat.diff_norm_sq(u, order), rel=1e-10, abs=1e-9)


def test_quadratic_form_2d_3d(rng):
    for dim, r in ((2, 4), (3, 2)):
        u = lat.LatticeSeq.random(dim, r, rng)
        Q = lat.quadratic_form_matrix(dim, 1, r)
        x = u.values.ravel()
        assert x @ (Q @ x) == pytest.approx(lat.grad_norm_sq(u), rel=1e-12)


def test_apply_A_matches_form(rng):
    # (A u, u) = sign (||D^n u||^2 + lambda ||u||^2)
    for dim, order, lam in ((1, 1, 0.7), (1, 2, -20.0), (2, 1, 3.0), (3, 1, -13.0)):
        u = lat.LatticeSeq.random(dim, 3, rng)
        spec = lat.DiffOperatorSpec(dim, order, lam)
        Au = lat.apply_A_lambda(u, spec)
        form = float(np.sum(Au.values * u.embed(Au.radius).values))
        expected = spec.sign * (lat.diff_norm_sq(u, order) + lam * u.norm_sq())
        assert form == pytest.approx(expected, rel=1e-12)
        assert form > 0


def test_green_solve_residual_and_methods():
    spec = lat.DiffOperatorSpec(2, 1, 1.5)
    Gd = lat.green_solve(spec, 20, "dense")
    Gc = lat.green_solve(spec, 20, "cg")
    assert np.max(np.abs(Gd.values - Gc.values)) < 1e-10
    r = lat.apply_A_lambda(Gd, spec).values[1:-1, 1:-1]
    r[20, 20] -= 1.0
    assert np.max(np.abs(r)) < 1e-12
    with pytest.raises(ValueError):
        lat.green_solve(spec, 5, "lu")


def test_green_symmetric():
    G = lat.green_solve(lat.DiffOperatorSpec(2, 1, 0.8), 15)
    assert np.allclose(G.values, G.values[::-1, :])
    assert np.allclose(G.values, G.values.T)


def test_truncated_green_below_infinite():
    # compression raises the operator, so the truncated G(0) sits below the exact one
    exact = 1 / math.sqrt(0.01 * 4.01)
    small = lat.green_solve(lat.DiffOperatorSpec(1, 1, 0.01), 10).center
    big = lat.green_solve(lat.DiffOperatorSpec(1, 1, 0.01), 200).center
    assert small < big - 0.1
    assert big == pytest.approx(exact, rel=1e-12)


def test_maximize_u0_boundary_guard():
    with pytest.raises(ValueError):
        lat.maximize_u0(1, 1, 0.01, 6)
    with pytest.raises(ValueError):
        lat.maximize_u0(1, 1, 4.5)


def test_maximize_u0_delta_point():
    val, u = lat.maximize_u0(1, 1, 2.0, 10)
    assert val == 1.0 and u.center == 1.0


def test_direct_optimizer_cannot_beat_green():
    for d in (0.8, 3.0):
        green, _ = lat.maximize_u0(1, 1, d, 40)
        assert lat.maximize_u0_direct(1, 1, d, 6, seed=1) <= green + 1e-9


def test_interpolation_ratio_homogeneous(rng):
    u = lat.LatticeSeq.random(1, 8, rng)
    for th in (0.5, 0.8, 1.0):
        assert lat.interpolation_ratio(u.scaled(3.7), th) == pytest.approx(lat.interpolation_ratio(u, th), rel=1e-12)


def test_boundary_mass():
    assert lat.boundary_mass_fraction(lat.LatticeSeq.delta(1, 3)) == 0.0
    assert lat.boundary_mass_fraction(lat.LatticeSeq(np.ones(3))) == pytest.approx(2 / 3)
