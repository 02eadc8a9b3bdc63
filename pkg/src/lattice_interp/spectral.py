"""Orthonormal families and negative spectra of lattice Schroedinger operators.

H = (-Delta)^n - V acts on the box {-N..N}^dim with zero extension outside,
so its quadratic form is ||D^n u||^2 - (V u, u) for finitely supported u.
Min-max then puts every truncated eigenvalue above the corresponding one of
the operator on Z^dim.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np
import scipy.sparse as sps
from scipy.linalg import eigh
from scipy.sparse.linalg import eigsh

from .constants import check_admissible, sharp_constant
from .lattice import LatticeSeq, diff_norm_sq, quadratic_form_matrix

__all__ = [
    "OrthonormalFamily",
    "SchrodingerSpec",
    "SpectralReport",
    "density",
    "orth_family_check",
    "lq_constant",
    "corollary_lq_check",
    "schrodinger_matrix",
    "negative_eigenpairs",
    "negative_spectrum",
    "lieb_thirring_constant",
    "lieb_thirring_check",
    "spectral_report",
    "rayleigh_residual",
]

_DENSE_SIZE = 2100


@dataclass(frozen=True)
class OrthonormalFamily:
    members: Tuple[LatticeSeq, ...]

    def __post_init__(self):
        members = tuple(self.members)
        if not members:
            raise ValueError("family must not be empty")
        shape = members[0].values.shape
        if any(m.values.shape != shape for m in members):
            raise ValueError("members must live on the same box")
        object.__setattr__(self, "members", members)

    @classmethod
    def from_matrix(cls, vecs, dim, radius):
        """Columns of ``vecs`` reshaped onto the box."""
        shape = (2 * radius + 1,) * dim
        return cls(tuple(LatticeSeq(vecs[:, j].reshape(shape)) for j in range(vecs.shape[1])))

    @property
    def size(self):
        return len(self.members)

    def matrix(self):
        return np.column_stack([m.values.ravel() for m in self.members])

    def gram_deviation(self):
        M = self.matrix()
        return float(np.max(np.abs(M.T @ M - np.eye(M.shape[1]))))


def density(fam):
    """rho(k) = sum_j u_j(k)^2."""
    if fam.gram_deviation() > 1e-8:
        raise ValueError("family is not orthonormal")
    return LatticeSeq(sum(m.values**2 for m in fam.members))


def _admissible_below_one(dim, order, theta):
    check_admissible(dim, order, theta)
    if theta >= 1.0:
        raise ValueError("theta = 1 is excluded: the exponent (2 - theta)/(1 - theta) diverges")


def orth_family_check(fam, theta, order=1):
    """(sum rho^((2-theta)/(1-theta)), K^(1/(1-theta)) sum_j ||D^n u_j||^2)."""
    dim = fam.members[0].dim
    _admissible_below_one(dim, order, theta)
    rho = density(fam).values
    K = sharp_constant(dim, order, theta).constant
    lhs = float(np.sum(rho ** ((2.0 - theta) / (1.0 - theta))))
    energy = sum(diff_norm_sq(m, order) for m in fam.members)
    return lhs, K ** (1.0 / (1.0 - theta)) * energy


def lq_constant(dim, order, theta):
    """K(theta)^(1/(2(2-theta))), the constant of the single-function l^q bound."""
    _admissible_below_one(dim, order, theta)
    return sharp_constant(dim, order, theta).constant ** (1.0 / (2.0 * (2.0 - theta)))


def corollary_lq_check(u, theta, order=1):
    """(||u||_q, C ||u||^(1/(2-theta)) ||D^n u||^((1-theta)/(2-theta))), q = 2(2-theta)/(1-theta)."""
    C = lq_constant(u.dim, order, theta)
    q = 2.0 * (2.0 - theta) / (1.0 - theta)
    lhs = float(np.sum(np.abs(u.values) ** q) ** (1.0 / q))
    rhs = C * u.norm_sq() ** (0.5 / (2.0 - theta)) * diff_norm_sq(u, order) ** (0.5 * (1.0 - theta) / (2.0 - theta))
    return lhs, rhs


@dataclass(frozen=True)
class SchrodingerSpec:
    """H = (-Delta)^order - V on the box of the given radius."""

    dim: int
    order: int
    potential: LatticeSeq
    radius: int

    def __post_init__(self):
        if self.potential.dim != self.dim:
            raise ValueError("potential dimension mismatch")
        if np.any(self.potential.values < 0.0):
            raise ValueError("the potential must be nonnegative")
        if self.radius < self.potential.radius:
            raise ValueError("box radius smaller than the potential support box")
        if self.dim > 1 and self.order != 1:
            raise ValueError("only order 1 is supported for dim >= 2")

    def potential_on_box(self):
        return self.potential.embed(self.radius).values.ravel()


def schrodinger_matrix(spec):
    Q = quadratic_form_matrix(spec.dim, spec.order, spec.radius)
    return (Q - sps.diags(spec.potential_on_box())).tocsr()


def negative_eigenpairs(spec):
    """Negative eigenvalues (ascending) and unit eigenvectors as columns."""
    H = schrodinger_matrix(spec)
    n = H.shape[0]
    V = spec.potential_on_box()
    if not np.any(V > 0.0):
        return np.empty(0), np.empty((n, 0))
    if n <= _DENSE_SIZE:
        vals, vecs = eigh(H.toarray())
    else:
        # at most |supp V| eigenvalues are negative since (-Delta)^n >= 0
        k = min(int(np.count_nonzero(V)) + 1, n - 2)
        vals, vecs = eigsh(H, k=k, which="SA", tol=1e-13)
        order = np.argsort(vals)
        vals, vecs = vals[order], vecs[:, order]
        if vals[-1] < 0.0:  # pragma: no cover - guaranteed by the rank bound
            raise ArithmeticError("negative spectrum not fully resolved")
    neg = vals < 0.0
    return vals[neg], vecs[:, neg]


def negative_spectrum(spec):
    return [float(v) for v in negative_eigenpairs(spec)[0]]


def lieb_thirring_constant(dim, order, theta):
    """K(theta) (1-theta)^(1-theta) / (2-theta)^(2-theta)."""
    _admissible_below_one(dim, order, theta)
    K = sharp_constant(dim, order, theta).constant
    return K * (1.0 - theta) ** (1.0 - theta) / (2.0 - theta) ** (2.0 - theta)


@dataclass(frozen=True)
class SpectralReport:
    eigenvalues: Tuple[float, ...]
    trace: float
    bound: float
    constant: float
    theta: float

    @property
    def ratio(self):
        return self.trace / self.bound if self.bound > 0 else 0.0

    def as_dict(self):
        return {
            "eigenvalues": list(self.eigenvalues),
            "negative_trace": self.trace,
            "lieb_thirring_bound": self.bound,
            "bound_constant": self.constant,
            "theta": self.theta,
            "ratio": self.ratio,
        }


def lieb_thirring_check(spec, theta):
    """(sum |lambda_j|, C sum V^(2 - theta)) for the negative spectrum of H."""
    C = lieb_thirring_constant(spec.dim, spec.order, theta)
    vals = negative_spectrum(spec)
    trace = float(-sum(vals))
    bound = C * float(np.sum(spec.potential.values ** (2.0 - theta)))
    return trace, bound


def spectral_report(spec, theta):
    C = lieb_thirring_constant(spec.dim, spec.order, theta)
    vals = negative_spectrum(spec)
    bound = C * float(np.sum(spec.potential.values ** (2.0 - theta)))
    return SpectralReport(tuple(vals), float(-sum(vals)), bound, C, float(theta))


def rayleigh_residual(spec):
    """|sum lambda_j - (sum ||D^n u_j||^2 - (V, rho))| over the negative eigenpairs."""
    vals, vecs = negative_eigenpairs(spec)
    if vals.size == 0:
        return 0.0
    shape = (2 * spec.radius + 1,) * spec.dim
    energy = sum(diff_norm_sq(LatticeSeq(vecs[:, j].reshape(shape)), spec.order) for j in range(vals.size))
    rho = np.sum(vecs**2, axis=1)
    return abs(float(vals.sum()) - (energy - float(spec.potential_on_box() @ rho)))
