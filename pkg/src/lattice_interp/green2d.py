"""Closed forms for the first-order problem on Z^2.

Everything is expressed through the distance x > 0 from the spectrum
[-8, 0]: lambda = x on the upper branch and lambda = -8 - x on the lower
one.  The elliptic modulus k = 4/(4 + lambda) then has complement
k' = sqrt(x (x + 8))/(x + 4) on both branches, which keeps K, E and K - E
accurate down to tiny shifts.
"""

import math

from scipy.optimize import brentq

from ._numerics import maximize_on_log_scale, theta_prefactor
from .green1d import SharpConstantResult
from .specfun import elliptic_KE_from_complement, lambert_w_m1

__all__ = [
    "f2",
    "g2",
    "h2",
    "d2_of_lambda",
    "lambda2_of_d",
    "V2",
    "V0_majorant",
    "K2_theta",
    "K2_surrogate",
    "log_inequality_rhs",
    "lambda_expansion_smalld",
]

_LOG_LAMBDA_MIN = -700.0
_LOG_LAMBDA_MAX = 36.0


def _branch(lam):
    lam = float(lam)
    if lam > 0.0:
        return 1, lam
    if lam < -8.0:
        return -1, -8.0 - lam
    raise ValueError(f"lambda={lam} lies in the spectrum [-8, 0]")


def _KE(x):
    kp = min(1.0, math.sqrt(x * (x + 8.0)) / (x + 4.0))
    return elliptic_KE_from_complement(kp)


def _f(x):
    K, _, _ = _KE(x)
    return 2.0 / math.pi * K / (x + 4.0)


def _g(x):
    _, E, _ = _KE(x)
    return 2.0 * E / (math.pi * x * (x + 8.0))


def _h(sign, x):
    K, _, KmE = _KE(x)
    if sign > 0:
        return 2.0 / math.pi * ((x + 4.0) * KmE + 4.0 * K) / ((x + 4.0) * (x + 8.0))
    return 2.0 / math.pi * (4.0 * K - (x + 4.0) * KmE) / ((x + 4.0) * x)


def _d(sign, x):
    K, E, KmE = _KE(x)
    if sign > 0:
        return x * ((x + 4.0) * KmE + 4.0 * K) / ((x + 4.0) * E)
    return (x + 8.0) * (4.0 * K - (x + 4.0) * KmE) / ((x + 4.0) * E)


def f2(lam):
    """G_lambda(0, 0) = (2/pi) K(4/(4+lambda)) / |4 + lambda|."""
    _, x = _branch(lam)
    return _f(x)


def g2(lam):
    """||G_lambda||^2 = 2 E(4/(4+lambda)) / (pi lambda (lambda + 8))."""
    _, x = _branch(lam)
    return _g(x)


def h2(lam):
    """||grad G_lambda||^2."""
    s, x = _branch(lam)
    return _h(s, x)


def d2_of_lambda(lam):
    """Energy ratio ||grad G||^2 / ||G||^2; increasing on each branch."""
    s, x = _branch(lam)
    return _d(s, x)


def _solve_branch(d):
    """Return (sign, x) with d(lambda(sign, x)) = d, for d in (0,4) or (4,8)."""
    sign = 1 if d < 4.0 else -1

    def gap(t):
        return _d(sign, math.exp(t)) - d

    lo, hi = _LOG_LAMBDA_MIN, _LOG_LAMBDA_MAX
    if gap(lo) * gap(hi) > 0:
        raise ArithmeticError(f"d={d} is outside the numerically reachable range")
    t = brentq(gap, lo, hi, xtol=1e-15, rtol=1e-15, maxiter=500)
    return sign, math.exp(t)


def lambda2_of_d(d):
    """Inverse of d2_of_lambda: lambda > 0 for d < 4, lambda < -8 for d > 4.

    d = 4 returns inf (the extremal there is delta).
    """
    d = float(d)
    if not 0.0 < d < 8.0:
        raise ValueError("d must lie in (0, 8)")
    if d == 4.0:
        return math.inf
    sign, x = _solve_branch(d)
    return x if sign > 0 else -8.0 - x


def V2(d):
    """sup u(0,0)^2 over ||u||^2 = 1, ||grad u||^2 = d."""
    d = float(d)
    if not 0.0 < d < 8.0:
        raise ValueError("d must lie in (0, 8)")
    if d == 4.0:
        return 1.0
    _, x = _solve_branch(d)
    K, E, _ = _KE(x)
    return 2.0 * K * K * x * (x + 8.0) / (math.pi * (x + 4.0) ** 2 * E)


def V0_majorant(d):
    """Explicit majorant of V2 with the double-logarithmic correction."""
    d = float(d)
    if not 0.0 < d < 8.0:
        raise ValueError("d must lie in (0, 8)")
    p = d * (8.0 - d)
    L = math.log(16.0 / p)
    return p / (32.0 * math.pi) * (L + math.log1p(L) + 2.0 * math.pi)


def log_inequality_rhs(norm_sq, grad_norm_sq):
    """||u||^2 V0(||grad u||^2 / ||u||^2): the log-corrected bound for u(0,0)^2."""
    if norm_sq <= 0.0:
        raise ValueError("norm_sq must be positive")
    ratio = grad_norm_sq / norm_sq
    if not 0.0 < ratio < 8.0:
        raise ValueError("||grad u||^2/||u||^2 must lie in (0, 8)")
    return norm_sq * V0_majorant(ratio)


def _log_f2(t):
    if t < _LOG_LAMBDA_MIN:
        # small-lambda expansion; the O(lambda log lambda) remainder underflows here
        return math.log((5.0 * math.log(2.0) - t) / (4.0 * math.pi))
    return math.log(_f(math.exp(t)))


def K2_theta(theta):
    """Sharp constant for u(0,0)^2 <= K ||u||^(2 theta) ||grad u||^(2 (1-theta))."""
    theta = float(theta)
    if not 0.0 < theta <= 1.0:
        raise ValueError("theta must lie in (0, 1]; theta = 0 needs the log inequality")
    if theta == 1.0:
        return SharpConstantResult(1.0, 1.0, None, "delta")
    lo = -2.0 / theta - 60.0
    t, val, _ = maximize_on_log_scale(lambda s: theta * s + _log_f2(s), lo, 60.0, n_grid=600)
    K = theta_prefactor(theta) * math.exp(val)
    lam_star = math.exp(t)
    return SharpConstantResult(theta, K, lam_star, f"G_lambda, lambda={lam_star!r}")


def K2_surrogate(theta):
    """Small-theta approximation theta^-theta (1-theta)^-(1-theta) / (4 pi e theta)."""
    theta = float(theta)
    if not 0.0 < theta < 1.0:
        raise ValueError("theta must lie in (0, 1)")
    return theta_prefactor(theta) / (4.0 * math.pi * math.e * theta)


def lambda_expansion_smalld(d):
    """Leading small-d approximation lambda(d) ~ -d / W_{-1}(-e d / 32)."""
    d = float(d)
    if not 0.0 < d < 0.1:
        raise ValueError("the expansion is only used for 0 < d < 0.1")
    return -d / lambert_w_m1(-math.e * d / 32.0)
