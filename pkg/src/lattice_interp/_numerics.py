"""Small numerical helpers shared by the closed-form modules."""

import math
from functools import lru_cache

import numpy as np
from scipy.optimize import minimize_scalar


@lru_cache(maxsize=None)
def graded_gauss_rule(a, b, levels=48, ratio=0.5, order=12):
    """Composite Gauss-Legendre nodes on [a, b], geometrically graded toward a.

    Panels are [a + (b-a) r^(j+1), a + (b-a) r^j]; the last panel reaches a.
    Resolves integrable endpoint singularities (log, power) at ``a``.
    """
    x, w = np.polynomial.legendre.leggauss(order)
    edges = [a + (b - a) * ratio**j for j in range(levels + 1)] + [a]
    nodes, weights = [], []
    for hi, lo in zip(edges[:-1], edges[1:]):
        half = 0.5 * (hi - lo)
        nodes.append(lo + half * (x + 1.0))
        weights.append(half * w)
    return np.concatenate(nodes), np.concatenate(weights)


def maximize_on_log_scale(logfun, lo, hi, n_grid=400):
    """Maximize ``logfun(t)`` over t in [lo, hi].

    A uniform scan brackets the maximum, a bounded Brent search polishes it.
    Returns (t_star, value, interior) where ``interior`` is False when the
    maximum sits on the bracket boundary.
    """
    ts = np.linspace(lo, hi, n_grid)
    vals = np.array([logfun(t) for t in ts])
    i = int(np.nanargmax(vals))
    if i in (0, n_grid - 1):
        return float(ts[i]), float(vals[i]), False
    res = minimize_scalar(
        lambda t: -logfun(t),
        bounds=(ts[i - 1], ts[i + 1]),
        method="bounded",
        options={"xatol": 1e-12 * max(1.0, abs(ts[i]))},
    )
    if -res.fun >= vals[i]:
        return float(res.x), float(-res.fun), True
    return float(ts[i]), float(vals[i]), True


def theta_prefactor(theta):
    """1 / (theta^theta (1-theta)^(1-theta)) with 0^0 = 1."""
    out = 0.0
    if theta > 0.0:
        out -= theta * math.log(theta)
    if theta < 1.0:
        out -= (1.0 - theta) * math.log(1.0 - theta)
    return math.exp(out)
