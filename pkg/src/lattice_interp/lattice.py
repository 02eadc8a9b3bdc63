"""Brute-force ground truth on truncated lattices.

Sequences live on the box {-N..N}^dim and are implicitly zero outside it.
Operators act on that zero extension, so every norm reported here is the
genuine l^2(Z^d) norm of a finitely supported sequence.  The shifted
operator A(lambda) restricted to the box is the compression P A P, whose
inverse applied to delta is the truncated Green's function.
"""

from dataclasses import dataclass
from math import comb, log, exp, sqrt

import numpy as np
import scipy.sparse as sps
from scipy.ndimage import convolve1d
from scipy.optimize import brentq, minimize
from scipy.sparse.linalg import cg

from ._numerics import maximize_on_log_scale

__all__ = [
    "LatticeSeq",
    "DiffOperatorSpec",
    "forward_difference",
    "grad_norm_sq",
    "diff_norm_sq",
    "apply_A_lambda",
    "quadratic_form_matrix",
    "green_solve",
    "boundary_mass_fraction",
    "green_norms",
    "maximize_u0",
    "maximize_u0_direct",
    "interpolation_ratio",
    "lattice_sharp_ratio",
]

DEFAULT_RADIUS = {1: 60, 2: 60, 3: 30}
_DENSE_LIMIT = 2500


@dataclass(frozen=True)
class LatticeSeq:
    """Real sequence on {-N..N}^dim, zero outside the box."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim not in (1, 2, 3):
            raise ValueError("LatticeSeq supports dim 1, 2 or 3")
        if len(set(v.shape)) != 1 or v.shape[0] % 2 == 0:
            raise ValueError("values must be a cube of odd side 2N+1")
        if not np.all(np.isfinite(v)):
            raise ValueError("values must be finite")
        object.__setattr__(self, "values", v)

    @property
    def dim(self):
        return self.values.ndim

    @property
    def radius(self):
        return (self.values.shape[0] - 1) // 2

    @classmethod
    def zeros(cls, dim, radius):
        return cls(np.zeros((2 * radius + 1,) * dim))

    @classmethod
    def delta(cls, dim, radius):
        u = np.zeros((2 * radius + 1,) * dim)
        u[(radius,) * dim] = 1.0
        return cls(u)

    @classmethod
    def random(cls, dim, radius, rng, support=None):
        """Gaussian entries, optionally only on the sub-box of given radius."""
        v = np.zeros((2 * radius + 1,) * dim)
        s = radius if support is None else min(support, radius)
        sl = (slice(radius - s, radius + s + 1),) * dim
        v[sl] = rng.standard_normal((2 * s + 1,) * dim)
        return cls(v)

    def __getitem__(self, index):
        if isinstance(index, (int, np.integer)):
            index = (index,)
        if len(index) != self.dim:
            raise IndexError("index dimension mismatch")
        N = self.radius
        if any(abs(int(i)) > N for i in index):
            return 0.0
        return float(self.values[tuple(int(i) + N for i in index)])

    @property
    def center(self):
        return float(self.values[(self.radius,) * self.dim])

    def norm_sq(self):
        return float(np.sum(self.values**2))

    def embed(self, radius):
        """Same sequence viewed on a larger box."""
        if radius < self.radius:
            raise ValueError("can only embed into a larger box")
        pad = radius - self.radius
        return LatticeSeq(np.pad(self.values, pad))

    def scaled(self, c):
        return LatticeSeq(c * self.values)


@dataclass(frozen=True)
class DiffOperatorSpec:
    """Shifted operator A(lambda) for difference order n on Z^dim.

    For lambda > 0, A = (D*D)^n + lambda; below the spectrum,
    A = -(D*D)^n - lambda.  Either way A is positive definite.
    """

    dim: int
    order: int
    shifted_lambda: float

    def __post_init__(self):
        if self.dim < 1 or self.order < 1:
            raise ValueError("dim and order must be >= 1")
        if self.dim > 1 and self.order != 1:
            raise ValueError("only order 1 is supported for dim >= 2")
        lam = self.shifted_lambda
        if not (lam > 0.0 or lam < -self.spectrum_top):
            raise ValueError(
                f"lambda={lam} lies in the spectral interval [{-self.spectrum_top}, 0]"
            )

    @property
    def spectrum_top(self):
        return 4.0 * self.dim if self.order == 1 else 4.0**self.order

    @property
    def sign(self):
        return 1.0 if self.shifted_lambda > 0 else -1.0


def _symbol_stencil(order):
    """Stencil of (D*D)^order in 1D: (-1)^k C(2n, n+k), k = -n..n."""
    return np.array([(-1) ** abs(k) * comb(2 * order, order + k) for k in range(-order, order + 1)], dtype=float)


def forward_difference(u, axis):
    """D_axis u(n) = u(n + e_axis) - u(n) on the zero extension.

    The result is returned on the box of radius N + 1 so that the boundary
    differences (where u drops to zero) are kept.
    """
    if not 0 <= axis < u.dim:
        raise ValueError(f"axis {axis} out of range for dim {u.dim}")
    padded = np.pad(u.values, 1)
    shifted = np.roll(padded, -1, axis=axis)
    return LatticeSeq(shifted - padded)


def grad_norm_sq(u):
    """||grad u||^2 = sum over axes of ||D_i u||^2."""
    return float(sum(forward_difference(u, ax).norm_sq() for ax in range(u.dim)))


def _second_difference(values):
    padded = np.pad(values, 1)
    return convolve1d(padded, [1.0, -2.0, 1.0], axis=0, mode="constant")


def diff_norm_sq(u, order=1):
    """||D^n u||^2 with D^n = Delta^(n/2) (n even) or D Delta^((n-1)/2) (n odd)."""
    if order == 1:
        return grad_norm_sq(u)
    if u.dim != 1:
        raise ValueError("higher orders are one-dimensional only")
    v = u.values
    for _ in range(order // 2):
        v = _second_difference(v)
    if order % 2:
        return grad_norm_sq(LatticeSeq(v))
    return float(np.sum(v**2))


def apply_A_lambda(u, spec):
    """A(lambda) u on Z^dim, returned on the box of radius N + order."""
    if u.dim != spec.dim:
        raise ValueError("dimension mismatch")
    n = spec.order
    padded = np.pad(u.values, n)
    stencil = _symbol_stencil(n)
    out = np.zeros_like(padded)
    for ax in range(u.dim):
        out += convolve1d(padded, stencil, axis=ax, mode="constant")
    out = spec.sign * (out + spec.shifted_lambda * padded)
    return LatticeSeq(out)


def quadratic_form_matrix(dim, order, radius):
    """Sparse matrix Q on the box with u.Q.u = ||D^n u||^2 (zero extension)."""
    m = 2 * radius + 1
    stencil = _symbol_stencil(order)
    offsets = list(range(-order, order + 1))
    one_d = sps.diags(
        [np.full(m - abs(o), c) for o, c in zip(offsets, stencil)], offsets, shape=(m, m), format="csr"
    )
    if dim == 1:
        return one_d
    eye = sps.identity(m, format="csr")
    Q = None
    for ax in range(dim):
        factors = [one_d if j == ax else eye for j in range(dim)]
        term = factors[0]
        for f in factors[1:]:
            term = sps.kron(term, f, format="csr")
        Q = term if Q is None else Q + term
    return Q.tocsr()


def green_solve(spec, radius=None, method="auto"):
    """Truncated Green's function: solve (P A(lambda) P) G = delta on the box.

    ``method`` is "dense" (direct solve), "cg" (conjugate gradients, relative
    residual 1e-12) or "auto" (dense for small systems).
    """
    radius = DEFAULT_RADIUS.get(spec.dim, 30) if radius is None else radius
    Q = quadratic_form_matrix(spec.dim, spec.order, radius)
    n = Q.shape[0]
    A = spec.sign * (Q + spec.shifted_lambda * sps.identity(n, format="csr"))
    rhs = np.zeros(n)
    rhs[n // 2] = 1.0
    if method == "auto":
        method = "dense" if n <= _DENSE_LIMIT else "cg"
    if method == "dense":
        try:
            G = np.linalg.solve(A.toarray(), rhs)
        except np.linalg.LinAlgError as exc:
            raise ArithmeticError("singular truncated system") from exc
    elif method == "cg":
        G, info = cg(A, rhs, rtol=1e-12, atol=0.0, maxiter=20 * n)
        if info != 0:
            raise ArithmeticError(f"conjugate gradients did not converge (info={info})")
    else:
        raise ValueError(f"unknown method {method!r}")
    return LatticeSeq(G.reshape((2 * radius + 1,) * spec.dim))


def boundary_mass_fraction(u):
    """Share of ||u||^2 carried by the outermost shell of the box."""
    total = u.norm_sq()
    if total == 0.0:
        return 0.0
    inner = u.values[(slice(1, -1),) * u.dim]
    return float((total - np.sum(inner**2)) / total)


def green_norms(spec, radius=None, method="auto"):
    """(f, g, h) = (G(0), ||G||^2, ||D^n G||^2) of the truncated Green's function."""
    G = green_solve(spec, radius, method)
    return G.center, G.norm_sq(), diff_norm_sq(G, spec.order), G


def _delta_energy(dim, order):
    return 2.0 * dim if order == 1 else float(comb(2 * order, order))


def _spectrum_top(dim, order):
    return 4.0 * dim if order == 1 else 4.0**order


def maximize_u0(dim, order, d_constraint, radius=None):
    """sup u(0)^2 over ||u||^2 = 1, ||D^n u||^2 = d on the truncated box.

    The maximizer is a normalized Green's function G_lambda; lambda is found
    by root-finding ||D^n G||^2 / ||G||^2 = d on the branch selected by d.
    Returns (value, argmax).
    """
    top = _spectrum_top(dim, order)
    if not 0.0 < d_constraint < top:
        raise ValueError(f"d must lie in (0, {top})")
    radius = DEFAULT_RADIUS.get(dim, 30) if radius is None else radius
    d_delta = _delta_energy(dim, order)
    if d_constraint == d_delta:
        return 1.0, LatticeSeq.delta(dim, radius)

    positive = d_constraint < d_delta

    def lam_of(t):
        return exp(t) if positive else -top - exp(t)

    def energy_gap(t):
        _, g, h, _ = green_norms(DiffOperatorSpec(dim, order, lam_of(t)), radius)
        return h / g - d_constraint

    lo, hi = log(1e-8), log(1e8)
    f_lo, f_hi = energy_gap(lo), energy_gap(hi)
    if f_lo * f_hi > 0:
        raise ValueError(
            f"d={d_constraint} not reachable on radius {radius}; enlarge the box"
        )
    t_star = brentq(energy_gap, lo, hi, xtol=1e-14, rtol=1e-15, maxiter=200)
    f, g, _, G = green_norms(DiffOperatorSpec(dim, order, lam_of(t_star)), radius)
    u = G.scaled(1.0 / sqrt(g))
    if boundary_mass_fraction(u) > 1e-8:
        raise ValueError(f"radius {radius} too small: maximizer reaches the box boundary")
    return f * f / g, u


def maximize_u0_direct(dim, order, d_constraint, radius, n_starts=6, seed=0):
    """Projected-gradient style cross-check by SLSQP on a small box.

    Maximizes u(0) subject to ||u||^2 = 1 and u.Q.u = d without using any
    Green's-function structure.  Returns the best value of u(0)^2 found.
    """
    Q = quadratic_form_matrix(dim, order, radius).toarray()
    n = Q.shape[0]
    c = n // 2
    rng = np.random.default_rng(seed)
    cons = [
        {"type": "eq", "fun": lambda u: u @ u - 1.0, "jac": lambda u: 2.0 * u},
        {"type": "eq", "fun": lambda u: u @ Q @ u - d_constraint, "jac": lambda u: 2.0 * Q @ u},
    ]
    e0 = np.zeros(n)
    e0[c] = 1.0
    best = 0.0
    for _ in range(n_starts):
        x0 = rng.standard_normal(n)
        x0 /= np.linalg.norm(x0)
        res = minimize(
            lambda u: -u[c], x0, jac=lambda u: -e0, constraints=cons, method="SLSQP",
            options={"maxiter": 2000, "ftol": 1e-15},
        )
        u = res.x
        if abs(u @ u - 1.0) < 1e-8 and abs(u @ Q @ u - d_constraint) < 1e-8:
            best = max(best, u[c] ** 2)
    return best


def interpolation_ratio(u, theta, order=1):
    """u(0)^2 / (||u||^(2 theta) ||D^n u||^(2 (1 - theta)))."""
    a = u.norm_sq()
    b = diff_norm_sq(u, order)
    denom = a**theta * (b ** (1.0 - theta) if theta < 1.0 else 1.0)
    return u.center**2 / denom


def lattice_sharp_ratio(dim, order, theta, radius=None, log_bounds=(-12.0, 12.0), n_grid=25):
    """Largest interpolation ratio over truncated Green's functions G_lambda, lambda > 0.

    On the truncated box the Cauchy-Schwarz argument still singles out the
    Green's functions, so this is the truncated-lattice supremum.
    Returns (ratio, lambda_star).
    """
    if theta >= 1.0:
        return 1.0, float("inf")

    def log_ratio(t):
        G = green_solve(DiffOperatorSpec(dim, order, exp(t)), radius)
        return log(interpolation_ratio(G, theta, order))

    t, val, _ = maximize_on_log_scale(log_ratio, *log_bounds, n_grid=n_grid)
    return exp(val), exp(t)
