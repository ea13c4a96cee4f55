"""Frameworks: a graph with a point configuration, and first-order rigidity.

The rigidity matrix convention: one row per edge in canonical order, with
the block (p_i - p_j) in vertex i's d columns and (p_j - p_i) in vertex
j's, all other entries zero.
"""

import json
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import InvalidInput, SpanDeficient
from .graphs import Graph, graph_from_json_dict, graph_to_json_dict
from .linalg import TolerancePolicy, numeric_rank

__all__ = [
    "Framework",
    "GeneralPositionCheck",
    "rigidity_matrix",
    "infinitesimally_rigid",
    "affine_span_dimension",
    "affine_general_position",
    "linear_general_position",
    "neighborhood_spans",
    "on_conic_at_infinity",
    "maxwell_index",
    "load_framework",
    "save_framework",
    "framework_from_json_dict",
    "framework_to_json_dict",
]

# exhaustive subset enumeration is capped here; beyond it the general
# position tests fall back to randomized spot checks
SUBSET_ENUM_CAP = 200_000
RANDOM_TRIALS = 32


@dataclass(frozen=True)
class Framework:
    """Graph plus a configuration of points, one row per vertex."""

    graph: Graph
    coordinates: np.ndarray

    def __post_init__(self):
        coords = np.asarray(self.coordinates, dtype=np.float64)
        if coords.ndim != 2:
            raise InvalidInput(f"coordinates must be 2-D, got shape {coords.shape}")
        if coords.shape[0] != self.graph.num_vertices:
            raise InvalidInput(
                f"coordinate rows ({coords.shape[0]}) must match vertex count "
                f"({self.graph.num_vertices})"
            )
        if coords.size and not np.all(np.isfinite(coords)):
            raise InvalidInput("coordinates contain non-finite entries")
        object.__setattr__(self, "coordinates", coords)

    @property
    def dim(self):
        return self.coordinates.shape[1]

    @property
    def num_vertices(self):
        return self.graph.num_vertices


def rigidity_matrix(fw):
    """Edge-by-coordinate matrix of shape (m, d*n)."""
    p = fw.coordinates
    n, d = p.shape
    r = np.zeros((fw.graph.num_edges, d * n))
    for row, (i, j) in enumerate(fw.graph.edges):
        diff = p[i] - p[j]
        r[row, d * i:d * i + d] = diff
        r[row, d * j:d * j + d] = -diff
    return r


def affine_span_dimension(coords, policy=TolerancePolicy()):
    """Dimension of the affine hull of the points."""
    coords = np.asarray(coords, dtype=np.float64)
    if coords.shape[0] == 0:
        return -1
    return numeric_rank(coords[1:] - coords[0], policy)


def infinitesimally_rigid(fw, policy=TolerancePolicy()):
    """Whether the only infinitesimal motions are the trivial ones.

    Requires the configuration to affinely span R^d; raises SpanDeficient
    otherwise, since the rank criterion is meaningless below full span.
    """
    n, d = fw.coordinates.shape
    if affine_span_dimension(fw.coordinates, policy) < d:
        raise SpanDeficient(f"configuration does not affinely span R^{d}")
    target = d * n - d * (d + 1) // 2
    return numeric_rank(rigidity_matrix(fw), policy) == target


@dataclass(frozen=True)
class GeneralPositionCheck:
    """Outcome of a general-position test.

    ``exact`` is False when the subset budget forced a randomized spot
    check, so a True verdict is only "probable".  A failing subset is
    reported in ``witness``.
    """

    in_general_position: bool
    exact: bool
    witness: tuple = None

    def __bool__(self):
        return self.in_general_position


def linear_general_position(vectors, policy=TolerancePolicy(), seed=0):
    """Every min(n, c) of the n given c-dimensional row vectors linearly
    independent.

    Enumerates all subsets when their count is at most SUBSET_ENUM_CAP,
    otherwise samples RANDOM_TRIALS subsets at random (seeded) and reports
    a non-exact verdict.
    """
    vectors = np.asarray(vectors, dtype=np.float64)
    if vectors.ndim != 2:
        raise InvalidInput("vectors must form a 2-D array")
    n, c = vectors.shape
    if n == 0:
        return GeneralPositionCheck(True, True)
    k = min(n, c)
    if k == 0:
        return GeneralPositionCheck(False, True, witness=(0,))
    a = vectors.T
    from math import comb

    if comb(n, k) <= SUBSET_ENUM_CAP:
        subsets = _kernels.combinations_array(n, k)
        exact = True
    else:
        rng = np.random.default_rng(seed)
        subsets = np.sort(
            np.stack([rng.choice(n, size=k, replace=False) for _ in range(RANDOM_TRIALS)]),
            axis=1,
        ).astype(np.int64)
        exact = False
    bad = _kernels.first_dependent_columns(a, subsets, policy.rel_tol, policy.abs_floor)
    if bad >= 0:
        return GeneralPositionCheck(False, True, witness=tuple(int(x) for x in subsets[bad]))
    return GeneralPositionCheck(True, exact)


def affine_general_position(coords, policy=TolerancePolicy(), seed=0):
    """Every subset of at most d+1 points affinely independent.

    Works on the homogeneous lifts (p_i, 1), where affine independence
    becomes linear independence.
    """
    coords = np.asarray(coords, dtype=np.float64)
    if coords.ndim != 2:
        raise InvalidInput("coordinates must be 2-D")
    lift = np.hstack([coords, np.ones((coords.shape[0], 1))])
    return linear_general_position(lift, policy, seed)


def neighborhood_spans(fw, policy=TolerancePolicy()):
    """True when every vertex together with its neighbors affinely spans
    R^d."""
    p = fw.coordinates
    d = fw.dim
    for v in range(fw.num_vertices):
        pts = p[[v] + sorted(fw.graph.neighbors(v))]
        if affine_span_dimension(pts, policy) < d:
            return False
    return True


def _conic_monomials(d):
    return [(a, b) for a in range(d) for b in range(a, d)]


def on_conic_at_infinity(fw, policy=TolerancePolicy()):
    """Whether all edge directions lie on a conic at infinity.

    Each direction v contributes the monomial row (v_a * v_b) over index
    pairs a <= b; the directions lie on a conic iff this matrix drops
    below full column rank d(d+1)/2.
    """
    p = fw.coordinates
    d = fw.dim
    monomials = _conic_monomials(d)
    rows = np.zeros((fw.graph.num_edges, len(monomials)))
    for row, (i, j) in enumerate(fw.graph.edges):
        v = p[i] - p[j]
        for col, (a, b) in enumerate(monomials):
            rows[row, col] = v[a] * v[b]
    return numeric_rank(rows, policy) < d * (d + 1) // 2


def maxwell_index(g, d):
    """m - d*n + d(d+1)/2, the guaranteed stress-count minus motion-count
    offset for spanning frameworks."""
    return g.num_edges - d * g.num_vertices + d * (d + 1) // 2


def framework_to_json_dict(fw):
    return {
        "graph": graph_to_json_dict(fw.graph),
        "dim": fw.dim,
        "coordinates": [[float(x) for x in row] for row in fw.coordinates],
    }


def framework_from_json_dict(data):
    if not isinstance(data, dict):
        raise InvalidInput("framework JSON must be an object")
    try:
        graph = graph_from_json_dict(data["graph"])
        dim = data["dim"]
        coords = data["coordinates"]
    except KeyError as missing:
        raise InvalidInput(f"framework JSON missing key {missing}") from None
    if not isinstance(dim, int) or dim < 1:
        raise InvalidInput("dim must be a positive integer")
    coords = np.asarray(coords, dtype=np.float64)
    if coords.ndim != 2 or coords.shape[1] != dim:
        raise InvalidInput(f"coordinates must be shaped (n, {dim})")
    return Framework(graph, coords)


def load_framework(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read framework from {path}: {exc}") from exc
    return framework_from_json_dict(data)


def save_framework(fw, path):
    with open(path, "w") as fh:
        json.dump(framework_to_json_dict(fw), fh, indent=2, sort_keys=True)
        fh.write("\n")
