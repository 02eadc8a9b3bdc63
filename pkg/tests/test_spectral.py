import math

import numpy as np
import pytest

from lattice_interp import InadmissibleError
from lattice_interp import greennd as gn
from lattice_interp import lattice as lat
from lattice_interp import spectral as sp


def test_family_validation(rng):
    with pytest.raises(ValueError):
        sp.OrthonormalFamily(())
    with pytest.raises(ValueError):
        sp.density(sp.OrthonormalFamily((lat.LatticeSeq(np.ones(3)),)))
    Q, _ = np.linalg.qr(rng.standard_normal((21, 4)))
    fam = sp.OrthonormalFamily.from_matrix(Q, 1, 10)
    assert fam.size == 4 and fam.gram_deviation() < 1e-14
    assert sp.density(fam).values.sum() == pytest.approx(4.0)


def test_orth_family_inequality(rng):
    for dim, r, th in ((1, 15, 0.5), (1, 15, 0.8), (2, 5, 0.5), (3, 3, 0.0)):
        n = (2 * r + 1) ** dim
        for k in (1, 3, 6):
            Q, _ = np.linalg.qr(rng.standard_normal((n, k)))
            lhs, rhs = sp.orth_family_check(sp.OrthonormalFamily.from_matrix(Q, dim, r), th)
            assert lhs <= rhs


def test_orth_family_rejects_theta_one():
    fam = sp.OrthonormalFamily((lat.LatticeSeq.delta(1, 1),))
    with pytest.raises(ValueError):
        sp.orth_family_check(fam, 1.0)
    with pytest.raises(InadmissibleError):
        sp.orth_family_check(fam, 0.2)


def test_lq_corollary(rng):
    assert sp.lq_constant(1, 2, 0.75) == pytest.approx(2 ** -0.2, rel=1e-14)
    for _ in range(100):
        u = lat.LatticeSeq.random(1, 10, rng)
        lhs, rhs = sp.corollary_lq_check(u, 0.6)
        assert lhs <= rhs


def test_lieb_thirring_constants():
    assert sp.lieb_thirring_constant(1, 1, 0.5) == pytest.approx(2 / (3 * math.sqrt(3)), rel=1e-14)
    assert sp.lieb_thirring_constant(1, 2, 0.75) == pytest.approx(2 * math.sqrt(2) / 5**1.25, rel=1e-14)
    assert sp.lieb_thirring_constant(3, 1, 0.0) == pytest.approx(gn.Kd0(3) / 4, rel=1e-14)
    assert sp.lieb_thirring_constant(3, 1, 0.0) == pytest.approx(0.0631, abs=1e-4)


def test_spec_validation():
    with pytest.raises(ValueError):
        sp.SchrodingerSpec(1, 1, lat.LatticeSeq(np.array([-1.0])), 5)
    with pytest.raises(ValueError):
        sp.SchrodingerSpec(1, 1, lat.LatticeSeq(np.ones(11)), 2)


def test_single_site_well_exact():
    # V = c delta on Z: the bound state solves 1/c = G_lambda(0) = 1/sqrt(mu(mu+4)), E = -mu
    c = 2.0
    mu = -2 + math.sqrt(4 + c * c)
    ev = sp.negative_spectrum(sp.SchrodingerSpec(1, 1, lat.LatticeSeq(np.array([c])), 60))
    assert len(ev) == 1 and ev[0] == pytest.approx(-mu, abs=1e-12)


def test_3d_weak_well_has_no_bound_state():
    # bound state iff c > 1/K3(0) = 3.957
    V = np.zeros((3, 3, 3))
    V[1, 1, 1] = 3.0
    assert sp.negative_spectrum(sp.SchrodingerSpec(3, 1, lat.LatticeSeq(V), 6)) == []


@pytest.mark.slow
def test_dense_and_lanczos_agree(monkeypatch):
    V = lat.LatticeSeq(np.pad(np.full((3, 3, 3), 5.0), 1))
    spec = sp.SchrodingerSpec(3, 1, V, 6)  # 2197 sites: Lanczos by default
    a = sp.negative_spectrum(spec)
    monkeypatch.setattr(sp, "_DENSE_SIZE", 10**4)
    b = sp.negative_spectrum(spec)
    assert len(a) == len(b) > 1
    assert np.max(np.abs(np.subtract(a, b))) < 1e-10


def test_lieb_thirring_random(rng):
    for dim, order, th, r, s in ((1, 1, 0.5, 25, 3), (1, 2, 0.75, 25, 3), (1, 1, 0.8, 25, 3), (2, 1, 0.5, 8, 2)):
        for _ in range(20):
            V = lat.LatticeSeq(rng.uniform(0, 6, (2 * s + 1,) * dim))
            rep = sp.spectral_report(sp.SchrodingerSpec(dim, order, V, r), th)
            assert rep.ratio <= 1.0
            assert rep.trace == pytest.approx(-sum(rep.eigenvalues))


def test_rayleigh_identity(rng):
    V = lat.LatticeSeq(rng.uniform(0, 8, 7))
    assert sp.rayleigh_residual(sp.SchrodingerSpec(1, 2, V, 20)) < 1e-10


def test_report_dict():
    rep = sp.spectral_report(sp.SchrodingerSpec(1, 1, lat.LatticeSeq(np.array([2.0])), 30), 0.5)
    d = rep.as_dict()
    assert set(d) == {"eigenvalues", "negative_trace", "lieb_thirring_bound", "bound_constant", "theta", "ratio"}
    assert 0 < d["ratio"] < 1
