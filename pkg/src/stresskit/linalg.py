"""Rank, kernel, and definiteness decisions behind one tolerance policy.

Every rank decision in the package goes through ``numeric_rank`` or the
basis helpers here, so the meaning of "numerically zero" is set in exactly
one place: a singular value counts as nonzero iff it exceeds
``max(rel_tol * sigma_max, abs_floor)``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput

__all__ = [
    "TolerancePolicy",
    "SubspaceBasis",
    "numeric_rank",
    "kernel_basis",
    "cokernel_basis",
    "is_psd",
]


@dataclass(frozen=True)
class TolerancePolicy:
    """Relative/absolute tolerance pair used for all rank and sign tests."""

    rel_tol: float = 1e-9
    abs_floor: float = 1e-12

    def __post_init__(self):
        if not (self.rel_tol > 0 and np.isfinite(self.rel_tol)):
            raise InvalidInput(f"rel_tol must be positive and finite, got {self.rel_tol}")
        if not (self.abs_floor > 0 and np.isfinite(self.abs_floor)):
            raise InvalidInput(f"abs_floor must be positive and finite, got {self.abs_floor}")

    def threshold(self, scale):
        """Largest magnitude still considered zero at the given scale."""
        return max(self.rel_tol * scale, self.abs_floor)


def as_float_matrix(a, name="matrix"):
    """Validate and convert to a 2-D float64 array with finite entries."""
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2:
        raise InvalidInput(f"{name} must be 2-D, got shape {a.shape}")
    if a.size and not np.all(np.isfinite(a)):
        raise InvalidInput(f"{name} contains non-finite entries")
    return a


@dataclass(frozen=True)
class SubspaceBasis:
    """Orthonormal basis of a subspace of R^ambient_dim.

    ``vectors`` has one basis vector per row, shape (dim, ambient_dim).
    """

    ambient_dim: int
    vectors: np.ndarray

    def __post_init__(self):
        vecs = np.asarray(self.vectors, dtype=np.float64)
        if vecs.ndim != 2 or vecs.shape[1] != self.ambient_dim:
            raise InvalidInput(
                f"basis vectors must have shape (dim, {self.ambient_dim}), got {vecs.shape}"
            )
        object.__setattr__(self, "vectors", vecs)

    @property
    def dim(self):
        return self.vectors.shape[0]

    def check(self, policy=TolerancePolicy()):
        """Verify pairwise orthonormality to within 10 * rel_tol."""
        if self.dim == 0:
            return True
        gram = self.vectors @ self.vectors.T
        return bool(np.max(np.abs(gram - np.eye(self.dim))) <= 10.0 * policy.rel_tol)

    def contains(self, v, policy=TolerancePolicy()):
        """Whether v lies in the subspace, up to policy tolerance at the
        scale of v."""
        v = np.asarray(v, dtype=np.float64).reshape(self.ambient_dim)
        resid = v - self.vectors.T @ (self.vectors @ v)
        scale = float(np.linalg.norm(v))
        return bool(np.linalg.norm(resid) <= policy.threshold(scale))


def numeric_rank(a, policy=TolerancePolicy()):
    """Number of singular values above the policy threshold."""
    a = as_float_matrix(a)
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    return int(np.count_nonzero(s > policy.threshold(s[0])))


def kernel_basis(a, policy=TolerancePolicy()):
    """Orthonormal basis of the null space {x : a @ x = 0}."""
    a = as_float_matrix(a)
    rows, cols = a.shape
    if rows == 0 or cols == 0:
        return SubspaceBasis(cols, np.eye(cols))
    _, s, vh = np.linalg.svd(a, full_matrices=True)
    rank = int(np.count_nonzero(s > policy.threshold(s[0])))
    return SubspaceBasis(cols, vh[rank:].copy())


def cokernel_basis(a, policy=TolerancePolicy()):
    """Orthonormal basis of the left null space {y : y @ a = 0}."""
    return kernel_basis(as_float_matrix(a).T, policy)


def is_psd(a, policy=TolerancePolicy()):
    """Positive semidefiniteness of the symmetric part of ``a``.

    The matrix is symmetrized before the eigenvalue test, and the smallest
    eigenvalue may dip below zero by rel_tol * max|eigenvalue| + abs_floor.
    """
    a = as_float_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise InvalidInput(f"is_psd needs a square matrix, got shape {a.shape}")
    if a.size == 0:
        return True
    sym = 0.5 * (a + a.T)
    eigs = np.linalg.eigvalsh(sym)
    scale = float(np.max(np.abs(eigs)))
    return bool(eigs[0] >= -(policy.rel_tol * scale + policy.abs_floor))
