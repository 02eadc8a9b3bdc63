"""First-order problem on Z^d for d >= 3.

The value G_lambda(0) is a d-fold torus average of 1/(lambda + 4 sum sin^2).
Two of the coordinates are integrated in closed form: for b >= 0

    (2 pi)^-2 int_{T^2} dy dz / (b + sin^2(y/2) + sin^2(z/2))
        = (2/pi) K(1/(1+b)) / (1+b),

and the remaining d - 2 coordinates are handled by tensor Gauss-Legendre
rules graded toward the origin, where the integrand has a logarithmic
singularity at lambda = 0.
"""

import math
import warnings
from functools import lru_cache

import numpy as np
from scipy.integrate import IntegrationWarning, quad
from scipy.special import ive

from ._numerics import graded_gauss_rule, maximize_on_log_scale, theta_prefactor
from .green1d import SharpConstantResult
from .specfun import elliptic_KE_from_complement, gamma_fn

__all__ = [
    "SUPPORTED_DIMS",
    "inner2",
    "green_origin",
    "f3",
    "g3",
    "h3",
    "grad_green0_norm_sq",
    "Kd0",
    "K3_theta",
    "Kd_theta",
    "watson_K3",
]

SUPPORTED_DIMS = (3, 4, 5)

# (levels, order) of the graded rule per outer coordinate
_RULES = {3: (56, 12), 4: (40, 10), 5: (26, 8)}
_CHUNK = 2_000_000


def _check_dim(dim):
    if dim not in SUPPORTED_DIMS:
        raise ValueError(f"dim must be one of {SUPPORTED_DIMS}, got {dim}")


def _inner2_parts(b):
    """Return (K, E) at modulus 1/(1+b) together with a = 1 + b."""
    b = np.asarray(b, dtype=float)
    a = 1.0 + b
    kp = np.sqrt(b * (b + 2.0)) / a
    # kp rounds above 1 for very large b
    K, E, _ = elliptic_KE_from_complement(np.clip(kp, 1e-300, 1.0))
    return K, E, a


def inner2(b):
    """Average of 1/(b + sin^2(y/2) + sin^2(z/2)) over T^2, for b > 0."""
    K, _, a = _inner2_parts(b)
    return 2.0 / math.pi * K / a


@lru_cache(maxsize=None)
def _outer_rule(dim):
    levels, order = _RULES[dim]
    x, w = graded_gauss_rule(0.0, math.pi, levels=levels, order=order)
    return np.sin(0.5 * x) ** 2, w / math.pi


def _outer_average(dim, integrand):
    """pi^-(dim-2) times the integral over [0, pi]^(dim-2) of integrand(sum sin^2)."""
    s2, w = _outer_rule(dim)
    m = dim - 2
    if m == 1:
        return float(np.dot(w, integrand(s2)))
    if m == 2:
        S = s2[:, None] + s2[None, :]
        return float(w @ integrand(S) @ w)
    total = 0.0
    step = max(1, _CHUNK // (s2.size * s2.size))
    inner = s2[:, None] + s2[None, :]
    for i in range(0, s2.size, step):
        S = s2[i : i + step, None, None] + inner[None, :, :]
        vals = integrand(S)
        total += float(np.einsum("i,ijk,j,k->", w[i : i + step], vals, w, w))
    return total


def green_origin(dim, lam):
    """G_lambda(0) on Z^dim for lambda >= 0 (dim in 3..5)."""
    _check_dim(dim)
    lam = float(lam)
    if lam < 0.0:
        raise ValueError("lambda must be >= 0")
    return 0.25 * _outer_average(dim, lambda S: inner2(0.25 * lam + S))


def _g_origin(dim, lam):
    # -d/dlambda of green_origin; uses d/db [k K(k)] = E / (1 - k^2) with k = 1/(1+b)
    def integrand(S):
        b = 0.25 * lam + S
        _, E, _ = _inner2_parts(b)
        return 2.0 / math.pi * E / (b * (b + 2.0))

    return _outer_average(dim, integrand) / 16.0


def f3(lam):
    """G_lambda(0) in 3D as a single integral of the elliptic reduction."""
    return green_origin(3, lam)


def g3(lam):
    """||G_lambda||^2 in 3D; finite only for lambda > 0."""
    lam = float(lam)
    if lam <= 0.0:
        raise ValueError("||G_lambda||^2 diverges at lambda = 0 in 3D")
    return _g_origin(3, lam)


def h3(lam):
    """||grad G_lambda||^2 in 3D, finite down to lambda = 0 where it equals f3(0)."""
    lam = float(lam)
    if lam < 0.0:
        raise ValueError("lambda must be >= 0")
    if lam == 0.0:
        return f3(0.0)
    return f3(lam) - lam * g3(lam)


def grad_green0_norm_sq(dim=3):
    """||grad G_0||^2.  At lambda = 0 the integrand collapses onto the one of K_d(0)."""
    _check_dim(dim)
    return green_origin(dim, 0.0)


def Kd0(dim):
    """Sharp constant in u(0)^2 <= K_d(0) ||grad u||^2."""
    return green_origin(dim, 0.0)


def watson_K3():
    """K_3(0) from the Gamma-product evaluation of the Watson integral."""
    prod = gamma_fn(1 / 24) * gamma_fn(5 / 24) * gamma_fn(7 / 24) * gamma_fn(11 / 24)
    return math.sqrt(6.0) / (24.0 * (2.0 * math.pi) ** 3) * prod


def _laplace_green0(dim, lam):
    # G_lambda(0) = int_0^inf e^(-lambda t) ive(0, 2t)^dim dt; cheap locator for lambda*
    def f(t):
        return math.exp(-lam * t) * ive(0, 2.0 * t) ** dim

    c = 40.0 / (1.0 + lam)  # the mass sits in t < c for large lambda
    with warnings.catch_warnings():
        # quadpack flags roundoff on the far tail once it drops below the tolerance
        warnings.simplefilter("ignore", IntegrationWarning)
        head = quad(f, 0.0, c, epsabs=0.0, epsrel=1e-11, limit=200)[0]
        tail = quad(f, c, np.inf, epsabs=1e-13 * head, epsrel=1e-10, limit=500)[0]
    return head + tail


def Kd_theta(dim, theta):
    """Sharp constant for u(0)^2 <= K ||u||^(2 theta) ||grad u||^(2 (1 - theta)).

    theta = 0 gives K_d(0) (the extremal G_0 is not square summable),
    theta = 1 gives 1 with extremal delta.  For dim > 3 and 0 < theta < 1 the
    same maximization is used; the result is flagged as an extension.
    """
    _check_dim(dim)
    theta = float(theta)
    if not 0.0 <= theta <= 1.0:
        raise ValueError("theta must lie in [0, 1]")
    if theta == 1.0:
        return SharpConstantResult(1.0, 1.0, None, "delta")
    if theta == 0.0:
        return SharpConstantResult(0.0, Kd0(dim), None, "none; G_0 is not in l2")
    # the tensor rule gets slow for dim > 3; locate lambda* on the 1D Laplace form there
    origin = green_origin if dim == 3 else _laplace_green0
    t, val, interior = maximize_on_log_scale(
        lambda s: theta * s + math.log(origin(dim, math.exp(s))), -60.0, 40.0, n_grid=120
    )
    lam_star = math.exp(t)
    if dim > 3:
        val = theta * t + math.log(green_origin(dim, lam_star))
    tag = f"G_lambda, lambda={lam_star!r}"
    if dim > 3:
        tag += " (extended)"
    if not interior:
        tag += " (bracket endpoint)"
    return SharpConstantResult(theta, theta_prefactor(theta) * math.exp(val), lam_star, tag)


def K3_theta(theta):
    return Kd_theta(3, theta)
