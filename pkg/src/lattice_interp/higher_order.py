"""Higher-order differences in one dimension.

The order-2 resolvent family A(lambda) = Delta^2 + lambda (lambda > 0) or
-Delta^2 - lambda (lambda < -16) has closed forms for G_lambda(0) and for the
whole sequence G_lambda(n) via the characteristic roots.  General order n is
handled by quadrature of the symbol.  The continuous Taikov constants and the
periodic first-order constant live here as well since they are compared
against the same family.
"""

import cmath
import math

import numpy as np
from scipy.optimize import brentq

from ._numerics import graded_gauss_rule, maximize_on_log_scale, theta_prefactor
from .green1d import SharpConstantResult

__all__ = [
    "f12",
    "dlogf12",
    "g12",
    "h12",
    "d12_of_lambda",
    "lambda12_of_d",
    "char_roots_12",
    "green12_n",
    "lambda_star_12",
    "K12_theta",
    "V12",
    "symbol_green0",
    "theta_min",
    "S_scaled",
    "K1n_theta",
    "taikov_C1n",
    "periodic_G",
    "periodic_C11",
]

_DELTA_ENERGY_2 = 6.0  # ||Delta delta||^2


def _check12(lam):
    lam = float(lam)
    if not (lam > 0.0 or lam < -16.0):
        raise ValueError(f"lambda={lam} lies in the spectrum [-16, 0]")
    return lam


def f12(lam):
    """G_lambda(0) for the order-2 operator."""
    lam = _check12(lam)
    if lam > 0:
        r, s = math.sqrt(lam + 16.0), math.sqrt(lam)
        return math.sqrt(0.5) * lam**-0.75 * math.sqrt((r + s) / (lam + 16.0))
    mu = -lam
    t, w = math.sqrt(mu), math.sqrt(mu - 16.0)
    return math.sqrt(0.5) * mu**-0.75 * math.sqrt((t + w) / (mu - 16.0))


def dlogf12(lam):
    """d log f12 / d lambda, from the closed form."""
    lam = _check12(lam)
    if lam > 0:
        r, s = math.sqrt(lam + 16.0), math.sqrt(lam)
        return -0.75 / lam + 0.25 / (r * s) - 0.5 / (lam + 16.0)
    mu = -lam
    t, w = math.sqrt(mu), math.sqrt(mu - 16.0)
    dmu = -0.75 / mu + 0.25 / (t * w) - 0.5 / (mu - 16.0)
    return -dmu


def g12(lam):
    """||G_lambda||^2 = -sign(lambda) f'(lambda)."""
    lam = _check12(lam)
    sign = 1.0 if lam > 0 else -1.0
    return -sign * f12(lam) * dlogf12(lam)


def h12(lam):
    """||Delta G_lambda||^2 = sign(lambda) (f + lambda f')."""
    lam = _check12(lam)
    sign = 1.0 if lam > 0 else -1.0
    return sign * f12(lam) * (1.0 + lam * dlogf12(lam))


def d12_of_lambda(lam):
    lam = _check12(lam)
    L = dlogf12(lam)
    return -1.0 / L - lam


def lambda12_of_d(d):
    """Inverse of d12_of_lambda: lambda > 0 for d < 6 and lambda < -16 for d > 6."""
    d = float(d)
    if not 0.0 < d < 16.0:
        raise ValueError("d must lie in (0, 16)")
    if d == _DELTA_ENERGY_2:
        return math.inf
    if d < _DELTA_ENERGY_2:
        to_lam, lo = math.exp, -60.0
    else:
        def to_lam(t):
            return -16.0 - math.exp(t)

        lo = -30.0
    t = brentq(lambda t: d12_of_lambda(to_lam(t)) - d, lo, 60.0, xtol=1e-14, rtol=1e-15, maxiter=500)
    return to_lam(t)


def V12(d):
    """sup u(0)^2 over ||u||^2 = 1, ||Delta u||^2 = d."""
    d = float(d)
    if not 0.0 < d < 16.0:
        raise ValueError("d must lie in (0, 16)")
    if d == _DELTA_ENERGY_2:
        return 1.0
    lam = lambda12_of_d(d)
    return f12(lam) ** 2 / g12(lam)


def char_roots_12(lam):
    """The four roots of (q^(1/2) - q^(-1/2))^4 = -lambda, lambda > 0.

    Ordered (q1, q2, q3, q4) with |q1| < 1, q1 q2 = 1, q3 = conj(q2),
    q4 = conj(q1).
    """
    lam = float(lam)
    if lam <= 0.0:
        raise ValueError("lambda must be positive")
    c = 2.0 + 1j * math.sqrt(lam)
    root = cmath.sqrt(c * c - 4.0)
    q1 = 0.5 * (c - root)
    if abs(q1) >= 1.0:
        q1 = 0.5 * (c + root)
    q2 = 1.0 / q1
    return q1, q2, q2.conjugate(), q1.conjugate()


def green12_n(lam, n):
    """G_lambda(n) for Delta^2 + lambda, lambda > 0."""
    lam = float(lam)
    if lam <= 0.0:
        raise ValueError("lambda must be positive")
    r, s = math.sqrt(lam + 16.0), math.sqrt(lam)
    q = char_roots_12(lam)[0]
    z = (r + s + 4j) * q ** abs(int(n))
    denom = math.sqrt(2.0) * lam**0.75 * r * math.sqrt(r + s)
    val = z / denom
    # the conjugate root pair gives the conjugate term; only the real part survives
    return val.real


def lambda_star_12(theta):
    """Maximizer of lambda^theta f12(lambda) for 3/4 <= theta < 1."""
    theta = float(theta)
    if not 0.75 <= theta < 1.0:
        raise ValueError("theta must lie in [3/4, 1)")
    num = 64.0 * theta - 32.0 * theta**2 - 29.0 + math.sqrt(32.0 * theta - 23.0)
    return num / (2.0 * theta**2 - 5.0 * theta + 3.0)


def K12_theta(theta):
    """Sharp constant for u(0)^2 <= K ||u||^(2 theta) ||Delta u||^(2 (1 - theta))."""
    theta = float(theta)
    if theta < 0.75:
        raise ValueError("the inequality fails for theta < 3/4")
    if theta > 1.0:
        raise ValueError("theta must not exceed 1")
    if theta == 1.0:
        return SharpConstantResult(1.0, 1.0, None, "delta")
    lam = lambda_star_12(theta)
    K = theta_prefactor(theta) * lam**theta * f12(lam)
    return SharpConstantResult(theta, K, lam, f"G_lambda, lambda={lam!r}")


# general order n, lambda > 0


def theta_min(n):
    """Smallest admissible theta, 1 - 1/(2n)."""
    if int(n) != n or n < 1:
        raise ValueError("order must be a positive integer")
    return 1.0 - 1.0 / (2.0 * n)


_SYMBOL_RULE = graded_gauss_rule(0.0, 0.5 * math.pi, levels=90, ratio=0.6, order=14)


def symbol_green0(n, lam):
    """int_0^pi dx / (lambda + (2 sin(x/2))^(2n)); pi times G_lambda(0)."""
    lam = float(lam)
    if lam <= 0.0:
        raise ValueError("lambda must be positive")
    phi, w = _SYMBOL_RULE
    vals = 1.0 / (lam + (2.0 * np.sin(phi)) ** (2 * n))
    return 2.0 * float(np.dot(w, vals))


def S_scaled(n, lam):
    """lambda^(1 - 1/(2n)) symbol_green0(n, lambda); lambda = 0 gives the limit."""
    lam = float(lam)
    if lam < 0.0:
        raise ValueError("lambda must be >= 0")
    if lam == 0.0:
        return math.pi / (2.0 * n * math.sin(math.pi / (2.0 * n)))
    return lam ** theta_min(n) * symbol_green0(n, lam)


def K1n_theta(n, theta):
    """Sharp constant for u(0)^2 <= K ||u||^(2 theta) ||D^n u||^(2 (1 - theta)).

    The supremum over lambda is scanned on [1e-10, 1e10] in log scale.  At
    theta = 1 - 1/(2n) the limit lambda -> 0 is also a candidate; the result
    notes whether the maximum is interior.
    """
    n = int(n)
    theta = float(theta)
    tmin = theta_min(n)
    if theta < tmin - 1e-15:
        raise ValueError(f"theta must lie in [{tmin}, 1] for order {n}")
    if theta > 1.0:
        raise ValueError("theta must not exceed 1")
    if theta == 1.0:
        return SharpConstantResult(1.0, 1.0, None, "delta")
    lo, hi = math.log(1e-10), math.log(1e10)
    t, val, interior = maximize_on_log_scale(
        lambda s: theta * s + math.log(symbol_green0(n, math.exp(s)) / math.pi), lo, hi, n_grid=300
    )
    pref = theta_prefactor(theta)
    if abs(theta - tmin) < 1e-15:
        limit = math.log(S_scaled(n, 0.0) / math.pi)
        if limit >= val:
            return SharpConstantResult(theta, pref * math.exp(limit), None, "none; maximizing family G_lambda, lambda -> 0+")
    lam = math.exp(t)
    tag = f"G_lambda, lambda={lam!r}"
    if not interior:
        tag += " (bracket endpoint)"
    return SharpConstantResult(theta, pref * math.exp(val), lam, tag)


def taikov_C1n(n):
    """Continuous-line constant at theta = 1 - 1/(2n)."""
    th = theta_min(n)
    return theta_prefactor(th) / (2.0 * n * math.sin(math.pi / (2.0 * n)))


# periodic first-order problem


def _xcoth_minus_one(x):
    if x < 1e-2:
        x2 = x * x
        return x2 / 3.0 - x2 * x2 / 45.0 + 2.0 * x2**3 / 945.0 - x2**4 / 4725.0
    return x / math.tanh(x) - 1.0


def periodic_G(lam):
    """(1/2 pi) (pi sqrt(lambda) coth(pi sqrt(lambda)) - 1) / lambda, lambda >= 0."""
    lam = float(lam)
    if lam < 0.0:
        raise ValueError("lambda must be >= 0")
    if lam == 0.0:
        return math.pi / 6.0
    x = math.pi * math.sqrt(lam)
    if x < 1e-2:
        x2 = x * x
        return math.pi / 6.0 * (1.0 - x2 / 15.0 + 2.0 * x2 * x2 / 315.0 - x2**3 / 1575.0)
    return _xcoth_minus_one(x) / (2.0 * math.pi * lam)


def periodic_C11(theta):
    """Periodic constant: theta prefactor times sup_{lambda >= 0} lambda^theta G(lambda)."""
    theta = float(theta)
    if not 0.0 <= theta <= 0.5:
        raise ValueError("theta must lie in [0, 1/2]")
    candidates = []
    if theta == 0.0:
        candidates.append(periodic_G(0.0))
    if theta == 0.5:
        candidates.append(0.5)  # lambda -> infinity
    if 0.0 < theta:
        _, val, _ = maximize_on_log_scale(lambda s: theta * s + math.log(periodic_G(math.exp(s))), -40.0, 60.0, n_grid=400)
        candidates.append(math.exp(val))
    return theta_prefactor(theta) * max(candidates)
