"""Integral (Fourier-side) forms of the lattice inequalities.

Sequences u on Z^d correspond to trigonometric series
u_hat(x) = sum_n u(n) e^{inx} on the torus T^d = [0, 2 pi]^d, with

    ||u||^2        = (2 pi)^-d int |u_hat|^2,
    ||D_j u||^2    = (2 pi)^-d int |u_hat|^2 4 sin^2(x_j/2).

Smooth periodic integrands are integrated with the trapezoid rule, refined by
doubling.  Torus averages of (sum sin^2)^(-s) are singular at the origin and
are reduced to one-dimensional Laplace transforms of products of scaled
Bessel functions,

    (2 pi)^-d int (sum sin^2(x_j/2))^(-s) = Gamma(s)^-1 int_0^inf t^(s-1) ive(0, t/2)^d dt,

with the large-t tail integrated from the asymptotic series of ive.
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad
from scipy.special import ive

from .constants import sharp_constant
from .lattice import LatticeSeq, grad_norm_sq
from .specfun import gamma_fn

__all__ = [
    "TorusFunctionSpec",
    "SobolevParams",
    "torus_integrals",
    "carlson_lhs_rhs",
    "carlson_refined",
    "carlson_original",
    "fourier_values",
    "parseval_bridge",
    "torus_power_mean",
    "cauchy_schwarz_Kd0",
    "sobolev_I",
    "sobolev_constant",
    "lq_norm_sq",
    "elementary_Kd0_proof_check",
]


@dataclass(frozen=True)
class TorusFunctionSpec:
    """Real function on [0, 2 pi]^dim, vectorized over coordinate arrays.

    ``func`` receives ``dim`` arrays of equal shape (one per coordinate).
    """

    func: Callable
    dim: int = 1

    def __post_init__(self):
        if self.dim not in (1, 2, 3):
            raise ValueError("torus functions are supported for dim 1, 2, 3")

    def __call__(self, *coords):
        return np.asarray(self.func(*coords), dtype=float)


def _trapezoid_grid(dim, m):
    x = 2.0 * np.pi * np.arange(m) / m
    return np.meshgrid(*([x] * dim), indexing="ij")


def _weight(coords, order):
    if len(coords) == 1:
        return (2.0 * np.sin(0.5 * coords[0])) ** (2 * order)
    if order != 1:
        raise ValueError("only order 1 is supported for dim >= 2")
    return 4.0 * sum(np.sin(0.5 * c) ** 2 for c in coords)


def torus_integrals(g, order=1, rtol=1e-13, m0=32, max_points=1 << 24):
    """Return (int g, int g^2, int w g^2) over T^d with w the order-n symbol.

    Trapezoid rule on m^d nodes, m doubled until all three agree to ``rtol``.
    """
    m, prev = m0, None
    while True:
        coords = _trapezoid_grid(g.dim, m)
        vals = g(*coords)
        w = _weight(coords, order)
        cell = (2.0 * np.pi / m) ** g.dim
        cur = np.array([vals.sum(), (vals**2).sum(), (w * vals**2).sum()]) * cell
        if prev is not None and np.all(np.abs(cur - prev) <= rtol * np.maximum(np.abs(cur), 1e-300)):
            return tuple(float(c) for c in cur)
        if (2 * m) ** g.dim > max_points:
            raise ArithmeticError("trapezoid refinement did not converge")
        prev, m = cur, 2 * m


def carlson_lhs_rhs(g, theta, order=1):
    """Both sides of (int g)^2 <= (2 pi)^d K(theta) (int g^2)^theta (int w g^2)^(1-theta).

    K(theta) is the sharp lattice constant for (g.dim, order); an
    inadmissible theta raises ``InadmissibleError``.
    """
    K = sharp_constant(g.dim, order, theta).constant
    I1, I2, W = torus_integrals(g, order)
    theta = float(theta)
    rhs = (2.0 * np.pi) ** g.dim * K * I2**theta * W ** (1.0 - theta)
    return I1 * I1, float(rhs)


def carlson_refined(g):
    """Both sides of (int g)^2 <= pi sqrt(4 - r) I2 I2hat with r = I2hat^2 / I2^2 (dim 1)."""
    if g.dim != 1:
        raise ValueError("the refined form is one-dimensional")
    I1, I2sq, Wsq = torus_integrals(g, 1)
    if I2sq == 0.0:
        raise ValueError("g vanishes identically")
    r = Wsq / I2sq
    if not 0.0 < r < 4.0:
        raise ValueError(f"energy ratio {r} outside (0, 4)")
    return I1 * I1, math.pi * math.sqrt(4.0 - r) * math.sqrt(I2sq * Wsq)


def carlson_original(a):
    """Both sides of (sum a_k)^2 <= pi (sum a_k^2)^(1/2) (sum k^2 a_k^2)^(1/2), k >= 1."""
    a = np.asarray(a, dtype=float)
    k = np.arange(1, a.size + 1)
    return float(a.sum() ** 2), float(math.pi * math.sqrt(np.sum(a**2) * np.sum((k * a) ** 2)))


def fourier_values(u, m=None):
    """u_hat on the m^d trapezoid grid; returns (u_hat, coords)."""
    N = u.radius
    m = 2 * (2 * N + 1) if m is None else int(m)
    if m < 2 * N + 2:
        raise ValueError("grid too coarse for an exact quadrature")
    arr = np.zeros((m,) * u.dim)
    idx = np.arange(-N, N + 1) % m
    arr[np.ix_(*([idx] * u.dim))] = u.values
    # u_hat(x_k) = sum_n u(n) exp(+i n x_k)
    uh = np.fft.ifftn(arr) * m**u.dim
    return uh, _trapezoid_grid(u.dim, m)


def parseval_bridge(u):
    """((||u||^2, ||grad u||^2) directly, the same pair from u_hat quadrature)."""
    uh, coords = fourier_values(u)
    p = np.abs(uh) ** 2
    four = (float(p.mean()), float((p * _weight(coords, 1)).mean()))
    return (u.norm_sq(), grad_norm_sq(u)), four


# singular torus averages


def _ive_asymptotic_power(dim, terms=6):
    """Coefficients c_j with (sqrt(2 pi z) ive(0, z))^dim ~ sum_j c_j z^-j."""
    a = [1.0]
    for j in range(1, terms):
        a.append(a[-1] * (2 * j - 1) ** 2 / (8.0 * j))
    a = np.array(a)
    c = np.array([1.0])
    for _ in range(dim):
        c = np.convolve(c, a)[:terms]
    return c


_TAIL_START = 400.0


def torus_power_mean(dim, s):
    """(2 pi)^-d int_{T^d} (sum_j sin^2(x_j/2))^(-s) dx, finite for 0 < s < d/2."""
    dim, s = int(dim), float(s)
    if dim < 1:
        raise ValueError("dim must be positive")
    if not 0.0 < s < 0.5 * dim:
        raise ValueError(f"the average diverges unless 0 < s < {dim / 2}")
    T = _TAIL_START

    def body(t):
        return ive(0, 0.5 * t) ** dim

    head = quad(body, 0.0, 1.0, weight="alg", wvar=(s - 1.0, 0.0), epsabs=0.0, epsrel=1e-13, limit=200)[0]
    mid = quad(lambda t: t ** (s - 1.0) * body(t), 1.0, T, epsabs=0.0, epsrel=1e-13, limit=400)[0]
    # ive(0, t/2)^d ~ (pi t)^(-d/2) sum_j c_j (2/t)^j
    c = _ive_asymptotic_power(dim)
    tail = 0.0
    for j, cj in enumerate(c):
        e = 0.5 * dim + j - s
        tail += cj * 2.0**j * T ** (-e) / e
    tail *= math.pi ** (-0.5 * dim)
    return float((head + mid + tail) / gamma_fn(s))


def cauchy_schwarz_Kd0(dim):
    """(2 pi)^-d int_{T^d} dx / (4 sum sin^2(x_j/2)): the Cauchy-Schwarz constant."""
    if dim < 3:
        raise ValueError("dim must be >= 3")
    return 0.25 * torus_power_mean(dim, 1.0)


@dataclass(frozen=True)
class SobolevParams:
    """Exponent data for ||u||_{l^{2p}}^2 <= C ||grad u||^2 on Z^dim."""

    dim: int
    p: float

    def __post_init__(self):
        if self.dim < 3:
            raise ValueError("dim must be >= 3")
        if not self.p > self.dim / (self.dim - 2.0):
            raise ValueError(f"need p > d/(d-2) = {self.dim / (self.dim - 2.0)}, i.e. p' < d/2")

    @property
    def p_prime(self):
        return self.p / (self.p - 1.0)

    @property
    def q(self):
        return 2.0 * self.p

    @classmethod
    def from_p_prime(cls, dim, p_prime):
        if not p_prime > 1.0:
            raise ValueError("p' must exceed 1")
        return cls(dim, p_prime / (p_prime - 1.0))


def sobolev_I(params):
    """I_{p',d} = (int_{T^d} (sum sin^2(x_j/2))^(-p') dx)^(1/p')."""
    d, pp = params.dim, params.p_prime
    return ((2.0 * math.pi) ** d * torus_power_mean(d, pp)) ** (1.0 / pp)


def sobolev_constant(params, loose=False):
    """C = (1/4) (2 pi)^(-d/p') I_{p',d}, from Hausdorff-Young plus Hoelder.

    ``loose=True`` returns (1/4) (2 pi)^(d(p+1)/p) I_{p',d}, larger by the
    p-independent factor (2 pi)^(2d).
    """
    d = params.dim
    expo = d * (params.p + 1.0) / params.p if loose else -d / params.p_prime
    return 0.25 * (2.0 * math.pi) ** expo * sobolev_I(params)


def lq_norm_sq(u, q):
    """||u||_{l^q}^2."""
    return float(np.sum(np.abs(u.values) ** q) ** (2.0 / q))


def elementary_Kd0_proof_check(dim, u):
    """(u(0)^2, K_d(0) ||grad u||^2) with both sides computed on the Fourier side."""
    if u.dim != dim:
        raise ValueError("dimension mismatch")
    uh, coords = fourier_values(u)
    lhs = float(uh.mean().real) ** 2
    grad = float((np.abs(uh) ** 2 * _weight(coords, 1)).mean())
    return lhs, float(cauchy_schwarz_Kd0(dim) * grad)
