"""Constructions that produce stresses rather than test them.

Two routes are implemented.  The rubber-band route pins a (d+1)-clique to
the canonical simplex, lets the remaining vertices settle at the weighted
equilibrium of their neighbors, and turns the resultant pull on the pinned
clique into edge forces there, giving a full equilibrium stress.  The
orthogonal-representation route builds vectors with non-neighbors
orthogonal under a signed inner product, rescales them to sum to zero, and
reads the stress off the signed Gram matrix.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    ConstructionFailed,
    InvalidInput,
    NotCentered,
    NotConnectedEnough,
    NotEquilibrium,
    OutsideDomain,
    Unresolvable,
)
from .frameworks import Framework, linear_general_position
from .graphs import find_clique, vertex_connectivity
from .linalg import TolerancePolicy, kernel_basis
from .statics import resolve_load
from .stresses import StressClass, StressMatrix, classify, is_stress_for, to_matrix

__all__ = [
    "RubberBandResult",
    "OrthogonalRep",
    "non_clique_edges",
    "canonical_simplex",
    "rubber_band_stress",
    "rubber_band_readoff",
    "build_gor",
    "center_gor",
    "lss_stress",
    "parse_signature",
]

GOR_MAX_ATTEMPTS = 32
CENTER_MAX_ATTEMPTS = 32
# smallest |alpha_i| / max|alpha| accepted when choosing a nowhere-zero
# kernel vector for centering
CENTER_MIN_RATIO = 1e-6


def canonical_simplex(d):
    """Rows 0, e_1, ..., e_d in R^d."""
    pts = np.zeros((d + 1, d))
    for j in range(1, d + 1):
        pts[j, j - 1] = 1.0
    return pts


def non_clique_edges(g, clique):
    """Canonical-order edges outside the clique; weight vectors align to
    this list."""
    inside = set(clique)
    return [e for e in g.edges if not (e[0] in inside and e[1] in inside)]


@dataclass(frozen=True)
class RubberBandResult:
    stress: StressMatrix
    framework: Framework
    stress_class: StressClass
    clique: tuple
    condition: float


def rubber_band_stress(g, d, weights, clique=None, policy=TolerancePolicy()):
    """Equilibrium stress from free weights on the edges outside a pinned
    (d+1)-clique.

    Steps: pin the clique to the canonical simplex; solve the weighted
    equilibrium system for the free vertices; accumulate the resultant
    pull on each clique vertex; resolve that load by edge forces inside
    the clique (isostatic, so uniquely); assemble the full stress.

    The returned classification records whether the weights landed in the
    open region where the output is a general-position stress.
    """
    n = g.num_vertices
    if clique is None:
        clique = find_clique(g, d + 1)
        if clique is None:
            raise InvalidInput(f"graph has no {d + 1}-clique to pin")
    clique = tuple(sorted(int(v) for v in clique))
    if len(clique) != d + 1 or not g.is_clique(clique):
        raise InvalidInput(f"{clique} is not a {d + 1}-clique of the graph")
    if n < d + 2:
        raise InvalidInput(f"need at least d+2 = {d + 2} vertices")

    outside = non_clique_edges(g, clique)
    weights = np.asarray(weights, dtype=np.float64)
    if weights.shape != (len(outside),):
        raise InvalidInput(f"expected {len(outside)} weights (non-clique edges), got {weights.shape}")
    if weights.size and not np.all(np.isfinite(weights)):
        raise InvalidInput("weights contain non-finite entries")
    if not _free_vertices_reach(g, clique):
        raise NotConnectedEnough("some free vertex has no path to the pinned clique")

    free = [v for v in range(n) if v not in set(clique)]
    free_pos = {v: k for k, v in enumerate(free)}
    pin_pos = {v: k for k, v in enumerate(clique)}
    simplex = canonical_simplex(d)

    w_of = {e: w for e, w in zip(outside, weights)}
    lap = np.zeros((len(free), len(free)))
    rhs = np.zeros((len(free), d))
    for (i, j), w in w_of.items():
        for a, b in ((i, j), (j, i)):
            if a in free_pos:
                fa = free_pos[a]
                lap[fa, fa] += w
                if b in free_pos:
                    lap[fa, free_pos[b]] -= w
                else:
                    rhs[fa] += w * simplex[pin_pos[b]]

    sing = np.linalg.svd(lap, compute_uv=False) if free else np.array([1.0])
    if sing[-1] <= policy.threshold(sing[0]):
        raise OutsideDomain("equilibrium system is singular for these weights")
    condition = float(sing[0] / sing[-1])
    settled = np.linalg.solve(lap, rhs) if free else rhs

    coords = np.zeros((n, d))
    for v, k in pin_pos.items():
        coords[v] = simplex[k]
    for v, k in free_pos.items():
        coords[v] = settled[k]

    # pull of the outside springs on the pinned vertices; the stress inside
    # the clique must cancel it
    pull = np.zeros((d + 1, d))
    for (i, j), w in w_of.items():
        if i in pin_pos:
            pull[pin_pos[i]] += w * (coords[i] - coords[j])
        if j in pin_pos:
            pull[pin_pos[j]] += w * (coords[j] - coords[i])

    from .graphs import complete_graph

    clique_fw = Framework(complete_graph(d + 1), simplex)
    try:
        clique_rho = resolve_load(clique_fw, -pull, policy)
    except (NotEquilibrium, Unresolvable) as exc:
        raise OutsideDomain(f"resultant load on the clique failed to resolve: {exc}") from exc

    clique_index = {e: k for k, e in enumerate(clique_fw.graph.edges)}
    omega = np.zeros(g.num_edges)
    for pos, e in enumerate(g.edges):
        if e in w_of:
            omega[pos] = w_of[e]
        else:
            a, b = pin_pos[e[0]], pin_pos[e[1]]
            omega[pos] = clique_rho[clique_index[(min(a, b), max(a, b))]]

    sm = to_matrix(g, omega)
    fw = Framework(g, coords)
    if not is_stress_for(sm, fw, policy):
        raise OutsideDomain("assembled stress does not annihilate the settled framework")
    cls = classify(g, sm, d, policy)
    return RubberBandResult(sm, fw, cls, clique, condition)


def _free_vertices_reach(g, clique):
    seen = set(clique)
    stack = list(clique)
    while stack:
        for u in g.neighbors(stack.pop()):
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == g.num_vertices


def rubber_band_readoff(sm, clique, policy=TolerancePolicy()):
    """Inverse of rubber_band_stress: the weights on the non-clique edges.

    The stress must classify as a general-position stress for the pinned
    parameterization to be invertible at it.
    """
    clique = tuple(sorted(int(v) for v in clique))
    g = sm.graph
    d = len(clique) - 1
    if not g.is_clique(clique):
        raise InvalidInput(f"{clique} is not a clique of the graph")
    cls = classify(g, sm, d, policy)
    if cls.rank != g.num_vertices - d - 1 or not cls.is_gstress:
        raise InvalidInput("stress is not a general-position stress; readoff undefined")
    mat = sm.matrix
    return np.array([-mat[i, j] for i, j in non_clique_edges(g, clique)])


@dataclass(frozen=True)
class OrthogonalRep:
    """Vectors v_0..v_{n-1} in R^D with non-adjacent pairs orthogonal
    under the signed inner product diag(signature)."""

    graph: object
    vectors: np.ndarray
    signature: tuple

    def __post_init__(self):
        vecs = np.asarray(self.vectors, dtype=np.float64)
        sig = tuple(int(s) for s in self.signature)
        if vecs.ndim != 2 or vecs.shape[0] != self.graph.num_vertices:
            raise InvalidInput(f"vectors must be (n, D), got {vecs.shape}")
        if vecs.size and not np.all(np.isfinite(vecs)):
            raise InvalidInput("vectors contain non-finite entries")
        if len(sig) != vecs.shape[1] or any(s not in (-1, 1) for s in sig):
            raise InvalidInput("signature must be a tuple of +1/-1, one per coordinate")
        object.__setattr__(self, "vectors", vecs)
        object.__setattr__(self, "signature", sig)

    @property
    def rep_dim(self):
        return self.vectors.shape[1]

    def signed_gram(self):
        return (self.vectors * np.array(self.signature)) @ self.vectors.T

    def orthogonality_residual(self):
        """Largest |<v_i, v_j>_S| over non-edges."""
        gram = self.signed_gram()
        worst = 0.0
        for i, j in self.graph.non_edges():
            worst = max(worst, abs(float(gram[i, j])))
        return worst

    def validate(self, policy=TolerancePolicy()):
        scale = float(np.max(np.abs(self.signed_gram()), initial=0.0))
        if self.orthogonality_residual() > policy.threshold(scale):
            raise InvalidInput("non-adjacent vectors are not orthogonal under the signature")
        return self

    def is_centered(self, policy=TolerancePolicy()):
        total = self.vectors.sum(axis=0)
        scale = float(np.max(np.abs(self.vectors), initial=0.0)) * self.graph.num_vertices
        return bool(np.max(np.abs(total), initial=0.0) <= policy.threshold(scale))


def parse_signature(text):
    """Turn '+++-' into (1, 1, 1, -1)."""
    sig = []
    for ch in text.strip():
        if ch == "+":
            sig.append(1)
        elif ch == "-":
            sig.append(-1)
        else:
            raise InvalidInput(f"signature may contain only '+' and '-', got {ch!r}")
    if not sig:
        raise InvalidInput("signature must be non-empty")
    return tuple(sig)


def build_gor(g, d, signature=None, seed=0, policy=TolerancePolicy(), max_attempts=GOR_MAX_ATTEMPTS):
    """Random orthogonal representation in dimension D = n - d - 1 whose
    vectors are in general linear position.

    Vertices are placed one by one: each new vector is drawn from the
    orthogonal complement (under the signed product) of its already-placed
    non-neighbors.  Graphs below (d+1)-connectivity are rejected, which
    also guarantees at most D - 1 constraints per step.
    """
    n = g.num_vertices
    rep_dim = n - d - 1
    if rep_dim < 1:
        raise InvalidInput(f"need n >= d + 2, got n = {n}, d = {d}")
    if vertex_connectivity(g) < d + 1:
        raise NotConnectedEnough(f"graph is not {d + 1}-connected")
    if signature is None:
        signature = (1,) * rep_dim
    signature = tuple(int(s) for s in signature)
    if len(signature) != rep_dim or any(s not in (-1, 1) for s in signature):
        raise InvalidInput(f"signature must be {rep_dim} entries of +1/-1")
    sig_arr = np.array(signature, dtype=np.float64)

    last_failure = "no attempts made"
    for attempt in range(max_attempts):
        rng = np.random.default_rng(np.random.SeedSequence((seed, attempt)))
        vecs = np.zeros((n, rep_dim))
        ok = True
        for v in range(n):
            earlier = [u for u in range(v) if u not in g.neighbors(v)]
            if not earlier:
                vec = rng.standard_normal(rep_dim)
            else:
                constraints = vecs[earlier] * sig_arr
                null = kernel_basis(constraints, policy)
                if null.dim == 0:
                    ok = False
                    last_failure = f"no free direction at vertex {v} (attempt {attempt})"
                    break
                vec = null.vectors.T @ rng.standard_normal(null.dim)
            norm = np.linalg.norm(vec)
            if norm <= policy.abs_floor:
                ok = False
                last_failure = f"degenerate vector at vertex {v} (attempt {attempt})"
                break
            vecs[v] = vec / norm
        if not ok:
            continue
        rep = OrthogonalRep(g, vecs, signature)
        gp = linear_general_position(vecs, policy, seed=seed)
        if not gp.in_general_position:
            last_failure = f"vectors left general position (attempt {attempt})"
            continue
        rep.validate(policy)
        return rep
    raise ConstructionFailed(
        f"orthogonal representation failed after {max_attempts} attempts (seed {seed}): {last_failure}"
    )


def center_gor(rep, policy=TolerancePolicy(), seed=0, max_attempts=CENTER_MAX_ATTEMPTS):
    """Rescale the vectors by a nowhere-zero kernel combination so they
    sum to zero.

    Returns (alpha, centered representation).  The scaling coefficients
    alpha span the kernel of the vector matrix, which has dimension d + 1
    for a spanning general-position representation.
    """
    vecs = rep.vectors
    n, rep_dim = vecs.shape
    null = kernel_basis(vecs.T, policy)
    if null.dim != n - rep_dim:
        raise InvalidInput(
            f"representation must span R^{rep_dim}; kernel dimension {null.dim} "
            f"instead of {n - rep_dim}"
        )
    rng = np.random.default_rng(np.random.SeedSequence((seed, 7)))
    for _ in range(max_attempts):
        alpha = null.vectors.T @ rng.standard_normal(null.dim)
        peak = float(np.max(np.abs(alpha)))
        if peak > 0 and float(np.min(np.abs(alpha))) >= CENTER_MIN_RATIO * peak:
            centered = OrthogonalRep(rep.graph, vecs * alpha[:, None], rep.signature)
            if not centered.is_centered(policy):
                raise NotCentered("rescaled vectors did not sum to zero within tolerance")
            return alpha, centered
    raise ConstructionFailed(
        f"no nowhere-zero centering combination found in {max_attempts} attempts"
    )


def lss_stress(rep, policy=TolerancePolicy()):
    """Stress matrix read off the signed Gram matrix of a centered
    orthogonal representation.

    Raises NotCentered when the vectors do not sum to zero.  The Gram
    entries at non-edges vanish by orthogonality, and centering makes the
    row sums vanish, so writing the off-diagonal entries as edge weights
    reproduces the Gram matrix up to roundoff while enforcing the stress
    invariants exactly.
    """
    rep.validate(policy)
    if not rep.is_centered(policy):
        raise NotCentered("representation vectors must sum to zero")
    gram = rep.signed_gram()
    g = rep.graph
    omega = np.array([-gram[i, j] for i, j in g.edges])
    sm = to_matrix(g, omega)
    drift = float(np.max(np.abs(sm.matrix - gram), initial=0.0))
    scale = float(np.max(np.abs(gram), initial=0.0)) * max(g.num_vertices, 1)
    if drift > policy.threshold(scale):
        raise NotCentered(f"Gram matrix is {drift:.3e} away from a stress matrix")
    return sm
