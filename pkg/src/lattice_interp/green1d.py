"""Closed forms for the first-order problem on Z.

f, g, h are G(0), ||G||^2 and ||DG||^2 for the Green's function of
D*D + lambda (lambda > 0) or -D*D - lambda (lambda < -4).
"""

import math
from dataclasses import dataclass
from typing import Optional

__all__ = [
    "SharpConstantResult",
    "f1",
    "g1",
    "h1",
    "q1",
    "green1d_n",
    "d_of_lambda",
    "lambda_of_d",
    "V1",
    "V1_extremal",
    "K1_theta",
    "refined_rhs",
]


@dataclass(frozen=True)
class SharpConstantResult:
    theta: float
    constant: float
    lambda_star: Optional[float]
    extremal: str


def _check(lam):
    lam = float(lam)
    if not (lam > 0.0 or lam < -4.0):
        raise ValueError(f"lambda={lam} lies in the spectrum [-4, 0]")
    return lam


def f1(lam):
    lam = _check(lam)
    return 1.0 / math.sqrt(lam * (lam + 4.0))


def g1(lam):
    lam = _check(lam)
    return (lam + 2.0) / ((lam + 4.0) * math.sqrt(lam**3 * (lam + 4.0)))


def h1(lam):
    lam = _check(lam)
    return 2.0 / math.sqrt(lam * (lam + 4.0) ** 3)


def q1(lam):
    """Decay ratio G(n+1)/G(n); in (0, 1) for lambda > 0, in (-1, 0) below -4."""
    lam = _check(lam)
    root = math.sqrt(lam * (lam + 4.0))
    if lam > 0:
        # (lam + 2 - root)/2 rewritten without cancellation
        return 2.0 / (lam + 2.0 + root)
    return -2.0 / (-(lam + 2.0) + root)


def green1d_n(lam, n):
    return f1(lam) * q1(lam) ** abs(int(n))


def d_of_lambda(lam):
    lam = _check(lam)
    return 2.0 * lam / (2.0 + lam)


def lambda_of_d(d):
    d = float(d)
    if not 0.0 < d < 4.0:
        raise ValueError("d must lie in (0, 4)")
    if d == 2.0:
        raise ValueError("d = 2 is attained by delta; no finite lambda")
    return 2.0 * d / (2.0 - d)


def V1(d):
    """sup u(0)^2 over ||u||^2 = 1, ||Du||^2 = d."""
    d = float(d)
    if not 0.0 <= d <= 4.0:
        raise ValueError("d must lie in [0, 4]")
    return 0.5 * math.sqrt(d * (4.0 - d))


def V1_extremal(d):
    """Description of the maximizer for V1(d): lambda(d), or delta at d = 2."""
    if float(d) == 2.0:
        return "delta"
    return f"G_lambda, lambda={lambda_of_d(d)!r}"


def K1_theta(theta):
    """Sharp constant in u(0)^2 <= K ||u||^(2 theta) ||Du||^(2 (1 - theta))."""
    theta = float(theta)
    if theta < 0.5:
        raise ValueError("the inequality fails for theta < 1/2")
    if theta > 1.0:
        raise ValueError("theta must not exceed 1")
    if theta == 0.5:
        return SharpConstantResult(0.5, 1.0, None, "none; maximizing family G_lambda, lambda -> 0+")
    if theta == 1.0:
        return SharpConstantResult(1.0, 1.0, None, "delta")
    K = 0.5 * (2.0 / theta) ** theta * (2.0 * theta - 1.0) ** (theta - 0.5)
    lam_star = (4.0 * theta - 2.0) / (1.0 - theta)
    return SharpConstantResult(theta, K, lam_star, f"G_lambda, lambda={lam_star!r}")


def refined_rhs(norm_sq, diff_norm_sq):
    """Right side of u(0)^2 <= 1/2 sqrt(4 - ||Du||^2/||u||^2) ||u|| ||Du||."""
    if norm_sq <= 0.0:
        raise ValueError("norm_sq must be positive")
    ratio = diff_norm_sq / norm_sq
    if not 0.0 < ratio < 4.0:
        raise ValueError("||Du||^2/||u||^2 must lie in (0, 4)")
    return 0.5 * math.sqrt(4.0 - ratio) * math.sqrt(norm_sq * diff_norm_sq)
