"""Special functions used by the closed forms.

Complete elliptic integrals are computed with the arithmetic-geometric mean,
the lower real branch of the Lambert function with Halley iteration.  The
elliptic routines accept numpy arrays so that quadrature rules can evaluate
whole node sets at once.
"""

import math

import numpy as np

__all__ = [
    "elliptic_K",
    "elliptic_E",
    "elliptic_KE_from_complement",
    "lambert_w_m1",
    "gamma_fn",
]

_AGM_MAXITER = 64


def _agm_KE(k2, kp):
    """AGM core.  ``k2`` is k**2 and ``kp`` is sqrt(1 - k**2), both arrays.

    Returns (K, E, K - E).  K - E is accumulated from the AGM defect sum so it
    carries full relative accuracy even for tiny k.
    """
    a = np.ones_like(kp)
    b = kp.copy()
    weight = 0.5
    defect = 0.5 * k2
    for _ in range(_AGM_MAXITER):
        c = 0.5 * (a - b)
        a, b = 0.5 * (a + b), np.sqrt(a * b)
        weight *= 2.0
        defect = defect + weight * c * c
        if np.all(np.abs(c) <= 1e-15 * a):
            break
    else:  # pragma: no cover - AGM converges quadratically
        raise ArithmeticError("AGM iteration did not converge")
    with np.errstate(divide="ignore"):
        K = np.pi / (2.0 * a)
    KmE = K * defect
    E = K - KmE
    return K, E, KmE


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def elliptic_K(k):
    """Complete elliptic integral of the first kind K(k), modulus convention.

    Defined for |k| < 1; raises ``ValueError`` otherwise.
    """
    k, scalar = _as_array(k)
    if not np.all(np.isfinite(k)) or np.any(np.abs(k) >= 1.0):
        raise ValueError("elliptic_K requires |k| < 1")
    k2 = k * k
    K, _, _ = _agm_KE(np.atleast_1d(k2), np.atleast_1d(np.sqrt((1.0 - k) * (1.0 + k))))
    return float(K[0]) if scalar else K.reshape(k.shape)


def elliptic_E(k):
    """Complete elliptic integral of the second kind E(k) for |k| <= 1."""
    k, scalar = _as_array(k)
    if not np.all(np.isfinite(k)) or np.any(np.abs(k) > 1.0):
        raise ValueError("elliptic_E requires |k| <= 1")
    flat = np.atleast_1d(k)
    out = np.ones_like(flat)
    inner = np.abs(flat) < 1.0
    if np.any(inner):
        kk = flat[inner]
        _, E, _ = _agm_KE(kk * kk, np.sqrt((1.0 - kk) * (1.0 + kk)))
        out[inner] = E
    return float(out[0]) if scalar else out.reshape(k.shape)


def elliptic_KE_from_complement(kp):
    """Return (K, E, K - E) given the complementary modulus k' = sqrt(1 - k^2).

    Passing k' directly keeps accuracy when k is within rounding of 1, which is
    where the lattice Green's functions sit for small spectral shifts.
    """
    kp, scalar = _as_array(kp)
    if np.any(kp <= 0.0) or np.any(kp > 1.0):
        raise ValueError("complementary modulus must lie in (0, 1]")
    flat = np.atleast_1d(kp)
    K, E, KmE = _agm_KE((1.0 - flat) * (1.0 + flat), flat.copy())
    if scalar:
        return float(K[0]), float(E[0]), float(KmE[0])
    return K.reshape(kp.shape), E.reshape(kp.shape), KmE.reshape(kp.shape)


def lambert_w_m1(z):
    """Lower real branch W_{-1}(z) for -1/e <= z < 0.

    Starts from the branch-point series or the logarithmic asymptotic and
    polishes with Halley's method.
    """
    z = float(z)
    branch = -math.exp(-1.0)
    if not (branch - 1e-16 <= z < 0.0):
        raise ValueError("lambert_w_m1 requires -1/e <= z < 0")
    if z <= branch:
        return -1.0
    ez1 = math.e * z + 1.0
    if ez1 < 0.3:
        p = -math.sqrt(2.0 * max(ez1, 0.0))
        w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p**3
    else:
        l1 = math.log(-z)
        l2 = math.log(-l1)
        w = l1 - l2 + l2 / l1
    if w == -1.0:
        return w
    for _ in range(50):
        ew = math.exp(w)
        f = w * ew - z
        wp1 = w + 1.0
        if wp1 == 0.0:
            break
        step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w_new = w - step
        if w_new > -1.0:
            w_new = 0.5 * (w - 1.0)
        if abs(w_new - w) <= 1e-15 * abs(w_new):
            w = w_new
            break
        w = w_new
    return w


def gamma_fn(x):
    """Gamma function on x > 0."""
    x = float(x)
    if not x > 0.0 or not math.isfinite(x):
        raise ValueError("gamma_fn requires a finite x > 0")
    return math.gamma(x)
