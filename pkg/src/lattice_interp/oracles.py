"""Independent reference computations.

Nothing here reuses the closed forms or the reductions of the main modules:
elliptic integrals come from adaptive quadrature of their definitions,
Green's function values from direct Fourier quadrature or from the
Laplace-Bessel representation, and singular torus averages from Monte Carlo
with a control variate.  The verification suites and the tests share them.
"""

import math

import numpy as np
from scipy.integrate import quad
from scipy.special import gamma, ive

__all__ = [
    "quad_elliptic_K",
    "quad_elliptic_E",
    "fourier_green0_2d",
    "single_integral_green0_2d",
    "quad_green0_order2",
    "laplace_bessel_green0",
    "mc_torus_power_mean",
    "periodic_G_series",
]


def quad_elliptic_K(k):
    # t = sin(phi) removes the endpoint singularity
    val, _ = quad(lambda p: 1.0 / math.sqrt(1.0 - (k * math.sin(p)) ** 2), 0.0, 0.5 * math.pi, epsabs=0.0, epsrel=1e-13)
    return val


def quad_elliptic_E(k):
    val, _ = quad(lambda p: math.sqrt(1.0 - (k * math.sin(p)) ** 2), 0.0, 0.5 * math.pi, epsabs=0.0, epsrel=1e-13)
    return val


def fourier_green0_2d(lam, rtol=1e-13):
    """(2 pi)^-2 int_{T^2} dx dy / (lambda + 4 sin^2(x/2) + 4 sin^2(y/2)), trapezoid with doubling."""
    m, prev = 16, None
    while True:
        s = 4.0 * np.sin(np.pi * np.arange(m) / m) ** 2
        cur = float(np.mean(1.0 / (lam + s[:, None] + s[None, :])))
        if prev is not None and abs(cur - prev) <= rtol * cur:
            return cur
        if m > 1 << 13:
            raise ArithmeticError("no convergence")
        prev, m = cur, 2 * m


def single_integral_green0_2d(lam):
    """(1/4 pi) int_0^pi dx / sqrt((lambda/4 + s^2)(lambda/4 + 1 + s^2)), s = sin(x/2)."""

    def f(x):
        s2 = math.sin(0.5 * x) ** 2
        return 1.0 / math.sqrt((0.25 * lam + s2) * (0.25 * lam + 1.0 + s2))

    val, _ = quad(f, 0.0, math.pi, epsabs=0.0, epsrel=1e-13, limit=200)
    return val / (4.0 * math.pi)


def quad_green0_order2(lam):
    """G_lambda(0) of the sign-adjusted Delta^2 resolvent from its symbol."""
    sign = 1.0 if lam > 0 else -1.0
    val, _ = quad(lambda x: 1.0 / (lam + 16.0 * math.sin(0.5 * x) ** 4), 0.0, math.pi, epsabs=0.0, epsrel=1e-13, limit=200)
    return sign * val / math.pi


def laplace_bessel_green0(dim, lam):
    """int_0^inf e^(-lambda t) ive(0, 2t)^dim dt (finite at lambda = 0 for dim >= 3)."""
    val, _ = quad(lambda t: math.exp(-lam * t) * ive(0, 2.0 * t) ** dim, 0.0, np.inf, epsabs=0.0, epsrel=1e-12, limit=1000)
    return val


def mc_torus_power_mean(dim, s, n=10**7, seed=0, chunk=10**6):
    """Monte Carlo estimate of (2 pi)^-d int_{[-pi,pi]^d} (sum sin^2(x_j/2))^(-s) dx.

    The raw integrand has infinite variance when 2s >= d/2; the control
    variate (|x|^2/4)^(-s) on the ball |x| < pi removes the singular part and
    has a closed-form integral.  Returns (estimate, standard error).
    """
    rng = np.random.default_rng(seed)
    ball = (
        4.0**s * 2.0 * math.pi ** (0.5 * dim) / gamma(0.5 * dim) * math.pi ** (dim - 2.0 * s) / (dim - 2.0 * s)
    )
    vol = (2.0 * math.pi) ** dim
    total = total_sq = 0.0
    done = 0
    while done < n:
        m = min(chunk, n - done)
        x = rng.uniform(-math.pi, math.pi, size=(m, dim))
        r2 = np.sum(x * x, axis=1)
        f = np.sum(np.sin(0.5 * x) ** 2, axis=1) ** (-s)
        c = np.where(r2 < math.pi**2, (0.25 * r2) ** (-s), 0.0)
        y = f - c
        total += y.sum()
        total_sq += (y * y).sum()
        done += m
    mean = total / n
    var = total_sq / n - mean * mean
    est = mean + ball / vol
    return est, math.sqrt(var / n)


def periodic_G_series(lam, terms=10**6):
    """(1/pi) sum_{k=1}^{terms} 1/(k^2 + lambda)."""
    k = np.arange(1, terms + 1, dtype=float)
    return float(np.sum(1.0 / (k * k + lam)) / math.pi)
