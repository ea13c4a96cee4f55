"""Equilibrium stresses, their matrices, and position-quality classes.

An equilibrium stress assigns a scalar to every edge so that each vertex's
weighted edge vectors cancel.  Its matrix form puts -omega_ij off the
diagonal, zero on non-edges, and row sums on the diagonal, so the all-ones
vector and every coordinate column of the framework lie in the kernel.

The two quality classes tested here are sharpest-possible kernel
conditions: a "general" stress has every possible subset of kernel rows
independent, a "facial" one only asks for enough independence around each
vertex.  Both are decided through the kernel basis, where they become
subset-rank questions.
"""

from dataclasses import dataclass
from math import comb

import numpy as np

from . import _kernels
from .errors import InvalidInput, NotAStress, NotAStressMatrix, PinningFailed, WrongRank
from .frameworks import Framework, linear_general_position
from .linalg import TolerancePolicy, cokernel_basis, is_psd, kernel_basis, numeric_rank

__all__ = [
    "StressVector",
    "StressMatrix",
    "StressClass",
    "stress_space",
    "to_matrix",
    "classify",
    "kernel_framework",
    "is_stress_for",
    "save_stress_csv",
    "load_stress_csv",
]

# per-vertex subset budget for the exact facial-stress search; beyond it a
# greedy randomized search with this many restarts takes over
FSTRESS_SUBSET_CAP = 5000
FSTRESS_RESTARTS = 8


@dataclass(frozen=True)
class StressVector:
    """Edge weights aligned with the graph's canonical edge order."""

    graph: object
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.shape != (self.graph.num_edges,):
            raise InvalidInput(
                f"stress values must have shape ({self.graph.num_edges},), got {vals.shape}"
            )
        if vals.size and not np.all(np.isfinite(vals)):
            raise InvalidInput("stress values contain non-finite entries")
        object.__setattr__(self, "values", vals)

    def to_matrix(self):
        return to_matrix(self.graph, self.values)


@dataclass(frozen=True)
class StressMatrix:
    """Symmetric n x n stress matrix tied to its graph."""

    graph: object
    matrix: np.ndarray

    def __post_init__(self):
        n = self.graph.num_vertices
        mat = np.asarray(self.matrix, dtype=np.float64)
        if mat.shape != (n, n):
            raise InvalidInput(f"stress matrix must be {n} x {n}, got {mat.shape}")
        if mat.size and not np.all(np.isfinite(mat)):
            raise InvalidInput("stress matrix contains non-finite entries")
        object.__setattr__(self, "matrix", mat)

    def edge_values(self):
        """Recover the edge weights: omega_ij = -Omega_ij over edges."""
        return np.array([-self.matrix[i, j] for i, j in self.graph.edges])

    def validate(self, policy=TolerancePolicy()):
        """Raise NotAStressMatrix unless symmetric, zero on non-edges, and
        zero row sums, all at the matrix's own scale."""
        mat = self.matrix
        scale = float(np.max(np.abs(mat), initial=0.0))
        tol = policy.threshold(scale)
        sym = float(np.max(np.abs(mat - mat.T), initial=0.0))
        if sym > tol:
            raise NotAStressMatrix(f"asymmetry {sym:.3e} exceeds {tol:.3e}")
        for i, j in self.graph.non_edges():
            if abs(mat[i, j]) > tol:
                raise NotAStressMatrix(f"nonzero entry {mat[i, j]:.3e} at non-edge ({i}, {j})")
        row_tol = policy.threshold(scale * max(self.graph.num_vertices, 1))
        worst = float(np.max(np.abs(mat.sum(axis=1)), initial=0.0))
        if worst > row_tol:
            raise NotAStressMatrix(f"row sum {worst:.3e} exceeds {row_tol:.3e}")
        return self


def to_matrix(g, omega):
    """Stress matrix of edge weights: -omega_ij on edges, row sums on the
    diagonal, zeros elsewhere."""
    omega = np.asarray(omega, dtype=np.float64)
    if omega.shape != (g.num_edges,):
        raise InvalidInput(f"expected {g.num_edges} edge weights, got shape {omega.shape}")
    n = g.num_vertices
    mat = np.zeros((n, n))
    for w, (i, j) in zip(omega, g.edges):
        mat[i, j] = -w
        mat[j, i] = -w
        mat[i, i] += w
        mat[j, j] += w
    return StressMatrix(g, mat)


def stress_space(fw, policy=TolerancePolicy()):
    """Orthonormal basis of the equilibrium stresses of the framework, as
    StressVectors (cokernel of the rigidity matrix)."""
    from .frameworks import rigidity_matrix

    basis = cokernel_basis(rigidity_matrix(fw), policy)
    return [StressVector(fw.graph, row) for row in basis.vectors]


def is_stress_for(sm, fw, policy=TolerancePolicy()):
    """Whether the stress matrix annihilates the lifted configuration
    [p | 1]."""
    if sm.graph != fw.graph:
        raise InvalidInput("stress matrix and framework have different graphs")
    phat = np.hstack([fw.coordinates, np.ones((fw.num_vertices, 1))])
    resid = float(np.max(np.abs(sm.matrix @ phat), initial=0.0))
    scale = (
        float(np.max(np.abs(sm.matrix), initial=0.0))
        * float(np.max(np.abs(phat), initial=0.0))
        * max(fw.num_vertices, 1)
    )
    return resid <= policy.threshold(scale)


@dataclass(frozen=True)
class StressClass:
    """Classification of a stress matrix at target rank n - d - 1.

    ``probable`` marks any verdict that relied on a randomized fallback
    instead of exhaustive subset enumeration.
    """

    rank: int
    is_gstress: bool
    is_fstress: bool
    is_psd: bool
    probable: bool = False


def _kernel_columns(sm, d, policy):
    """Kernel basis as an n x (d+1) matrix, or None when rank is off."""
    n = sm.graph.num_vertices
    target = n - d - 1
    rank = numeric_rank(sm.matrix, policy)
    if rank != target:
        return rank, None
    basis = kernel_basis(sm.matrix, policy)
    if basis.dim != d + 1:
        return rank, None
    return rank, basis.vectors.T


def classify(g, sm, d, policy=TolerancePolicy(), seed=0):
    """Rank, general/facial position class, and signedness of a stress.

    The general test asks that every d+1 rows of the kernel basis be
    independent; by duality that is exactly independence of every
    complementary n-d-1 column set of the matrix.  The facial test asks,
    for each vertex, for d neighbors whose removal (with the vertex)
    leaves independent matrix columns; the search is exhaustive up to
    FSTRESS_SUBSET_CAP subsets per vertex and greedy-randomized beyond.
    """
    if isinstance(sm, StressMatrix):
        if sm.graph != g:
            raise InvalidInput("stress matrix belongs to a different graph")
    else:
        sm = StressMatrix(g, sm)
    sm.validate(policy)
    if d < 1 or d > g.num_vertices - 2:
        raise InvalidInput(f"dimension {d} out of range for {g.num_vertices} vertices")

    psd = is_psd(sm.matrix, policy)
    rank, kern = _kernel_columns(sm, d, policy)
    if kern is None:
        return StressClass(rank, False, False, psd)

    gp = linear_general_position(kern, policy, seed=seed)
    fstress, f_probable = _facial_search(g, sm.matrix, d, policy, seed)
    probable = (not gp.exact) or f_probable
    return StressClass(rank, bool(gp.in_general_position), fstress, psd, probable)


def _facial_search(g, mat, d, policy, seed):
    n = g.num_vertices
    verts = np.arange(n)
    probable = False
    for v in range(n):
        nbrs = sorted(g.neighbors(v))
        if len(nbrs) < d:
            return False, probable
        if comb(len(nbrs), d) <= FSTRESS_SUBSET_CAP:
            found = _facial_exhaustive(mat, verts, v, nbrs, d, policy)
        else:
            probable = True
            found = _facial_greedy(mat, verts, v, nbrs, d, policy, seed)
        if not found:
            return False, probable
    return True, probable


def _complement_columns(verts, drop):
    keep = np.ones(verts.shape[0], dtype=bool)
    keep[list(drop)] = False
    return verts[keep]


def _facial_exhaustive(mat, verts, v, nbrs, d, policy):
    subsets = []
    for pick in _kernels.combinations_array(len(nbrs), d):
        drop = [v] + [nbrs[t] for t in pick]
        subsets.append(_complement_columns(verts, drop))
    subsets = np.array(subsets, dtype=np.int64)
    hit = _kernels.first_independent_columns(mat, subsets, policy.rel_tol, policy.abs_floor)
    return hit >= 0


def _facial_greedy(mat, verts, v, nbrs, d, policy, seed):
    rng = np.random.default_rng(np.random.SeedSequence((seed, v)))
    for _ in range(FSTRESS_RESTARTS):
        order = list(rng.permutation(nbrs))
        pick = []
        cols = [v]
        for u in order:
            if len(pick) == d:
                break
            trial = mat[:, cols + [u]]
            if numeric_rank(trial, policy) == len(cols) + 1:
                pick.append(u)
                cols.append(u)
        if len(pick) < d:
            continue
        comp = _complement_columns(verts, [v] + pick)
        sub = np.ascontiguousarray(comp).reshape(1, -1)
        if _kernels.first_independent_columns(mat, sub, policy.rel_tol, policy.abs_floor) == 0:
            return True
    return False


def _canonical_simplex_lift(d):
    """Rows: homogeneous lifts of 0, e_1, ..., e_d."""
    s = np.zeros((d + 1, d + 1))
    s[:, d] = 1.0
    for j in range(1, d + 1):
        s[j, j - 1] = 1.0
    return s


def kernel_framework(sm, d, pins=None, policy=TolerancePolicy()):
    """d-dimensional framework whose lifted configuration spans the stress
    matrix kernel, normalized by pinning d+1 vertices to 0, e_1, ..., e_d.

    Raises WrongRank unless rank is n - d - 1, NotAStressMatrix when the
    all-ones vector is missing from the kernel, and PinningFailed when no
    (or the given) pin set has an invertible kernel block.
    """
    if not isinstance(sm, StressMatrix):
        raise InvalidInput("kernel_framework needs a StressMatrix")
    sm.validate(policy)
    n = sm.graph.num_vertices
    target = n - d - 1
    rank, kern = _kernel_columns(sm, d, policy)
    if kern is None:
        raise WrongRank(f"stress matrix rank {rank}, expected {target}")

    ones = np.ones(n)
    coeff, *_ = np.linalg.lstsq(kern, ones, rcond=None)
    ones_resid = float(np.max(np.abs(kern @ coeff - ones)))
    if ones_resid > policy.threshold(1.0) * n:
        raise NotAStressMatrix("all-ones vector is not in the stress matrix kernel")

    if pins is not None:
        pins = tuple(int(v) for v in pins)
        if len(set(pins)) != d + 1 or not all(0 <= v < n for v in pins):
            raise InvalidInput(f"pins must be d+1 = {d + 1} distinct vertices")
        if not _invertible(kern[list(pins)], policy):
            raise PinningFailed(f"kernel block at pins {pins} is singular")
    else:
        pins = _first_invertible_pins(kern, d, policy)
        if pins is None:
            raise PinningFailed("no vertex subset gives an invertible kernel block")

    basis_change = np.linalg.solve(kern[list(pins)], _canonical_simplex_lift(d))
    phat = kern @ basis_change
    fw = Framework(sm.graph, phat[:, :d])
    if not is_stress_for(sm, fw, policy):
        raise NotAStress("normalized kernel configuration fails the stress residual")
    return fw


def _invertible(block, policy):
    s = np.linalg.svd(block, compute_uv=False)
    return s[-1] > policy.threshold(s[0])


def _first_invertible_pins(kern, d, policy):
    n = kern.shape[0]
    subsets = _kernels.combinations_array(n, d + 1)
    hit = _kernels.first_independent_columns(
        np.ascontiguousarray(kern.T), subsets, policy.rel_tol, policy.abs_floor
    )
    if hit < 0:
        return None
    return tuple(int(v) for v in subsets[hit])


def save_stress_csv(sm, path):
    """Write the matrix as n comma-separated rows, full double precision."""
    np.savetxt(path, sm.matrix, delimiter=",", fmt="%.17g")


def load_stress_csv(g, path, policy=TolerancePolicy()):
    """Read a stress matrix CSV and validate it against the graph."""
    try:
        mat = np.loadtxt(path, delimiter=",", ndmin=2)
    except (OSError, ValueError) as exc:
        raise InvalidInput(f"cannot read stress CSV from {path}: {exc}") from exc
    return StressMatrix(g, mat).validate(policy)
