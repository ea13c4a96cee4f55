"""Randomized certificates: global-rigidity verdicts, super-stability
checks, universally rigid constructions, and dimension probes.

Every entry point returns (or embeds) a CertificateReport carrying the
verdict, the sampled evidence, the seed, and the tolerance policy, so any
run can be reproduced bit for bit from its report.
"""

import numpy as np
from dataclasses import dataclass, field
from math import comb

from .constructions import (
    build_gor,
    center_gor,
    lss_stress,
    non_clique_edges,
    rubber_band_stress,
)
from .errors import (
    ConstructionFailed,
    InvalidInput,
    NotAStress,
    NotConnectedEnough,
    OutsideDomain,
    SpanDeficient,
)
from .frameworks import (
    affine_span_dimension,
    infinitesimally_rigid,
    on_conic_at_infinity,
    rigidity_matrix,
)
from .graphs import find_clique, vertex_connectivity
from .linalg import TolerancePolicy, is_psd, kernel_basis, numeric_rank
from .stresses import is_stress_for, kernel_framework, stress_space, to_matrix

__all__ = [
    "CertificateReport",
    "URConstruction",
    "ggr_test",
    "super_stable",
    "construct_universally_rigid",
    "corank_stats",
    "dimension_probe",
    "gor_dimension_probe",
]

GGR_TRIALS = 50
UR_RETRY_CAP = 10
CORANK_SAMPLES = 200
PROBE_POINTS = 10

# finite differences: central step, and the relaxed rank cutoff that an
# O(step^2) Jacobian error demands
FD_STEP = 1e-6
FD_RANK_REL_TOL = 1e-6


def as_jsonable(x):
    """Recursively convert numpy scalars/arrays so json.dumps accepts it."""
    if isinstance(x, dict):
        return {str(k): as_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [as_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return [as_jsonable(v) for v in x.tolist()]
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, (np.integer, int)):
        return int(x)
    if isinstance(x, (np.floating, float)):
        return float(x)
    return x


@dataclass(frozen=True)
class CertificateReport:
    """Reproducible record of a randomized verdict."""

    kind: str
    verdict: object
    target: object
    observed: object
    trials: int
    seed: int
    tolerance: dict
    caveat: str
    evidence: list = field(default_factory=list)

    def to_json_dict(self):
        return as_jsonable(
            {
                "kind": self.kind,
                "verdict": self.verdict,
                "target": self.target,
                "observed": self.observed,
                "trials": self.trials,
                "seed": self.seed,
                "tolerance": self.tolerance,
                "caveat": self.caveat,
                "evidence": self.evidence,
            }
        )


def _tolerance_dict(policy):
    return {"rel_tol": policy.rel_tol, "abs_floor": policy.abs_floor}


def _trial_rng(seed, *tags):
    return np.random.default_rng(np.random.SeedSequence((seed,) + tags))


def _random_max_rank_stress(g, p, d, rng, policy):
    """Stress rank achieved by a random combination at configuration p."""
    from .frameworks import Framework

    fw = Framework(g, p)
    basis = stress_space(fw, policy)
    if not basis:
        return 0, 0
    coeffs = rng.standard_normal(len(basis))
    omega = sum(c * sv.values for c, sv in zip(coeffs, basis))
    sm = to_matrix(g, omega)
    return len(basis), numeric_rank(sm.matrix, policy)


def ggr_test(g, d, trials=GGR_TRIALS, seed=0, policy=TolerancePolicy()):
    """Generic global rigidity verdict.

    A connectivity gate below d+1 is a certified NO.  Otherwise random
    frameworks are sampled; a random stress of rank n-d-1 at any of them
    is a YES, and exhausting the trials without one is a NO.  Both
    sampled verdicts are generic (almost-sure) certificates.
    """
    n = g.num_vertices
    if n < d + 2:
        raise InvalidInput(f"need at least d+2 = {d + 2} vertices, got {n}")
    target = n - d - 1
    connectivity = vertex_connectivity(g)
    if connectivity < d + 1:
        return CertificateReport(
            kind="GGR",
            verdict=False,
            target=target,
            observed={"connectivity": connectivity, "required": d + 1},
            trials=0,
            seed=seed,
            tolerance=_tolerance_dict(policy),
            caveat="certified-generic",
            evidence=[{"gate": "connectivity", "connectivity": connectivity, "required": d + 1}],
        )

    evidence = []
    best = 0
    verdict = False
    ran = 0
    for t in range(trials):
        rng = _trial_rng(seed, t)
        p = rng.standard_normal((n, d))
        dim_s, rank = _random_max_rank_stress(g, p, d, rng, policy)
        evidence.append({"trial": t, "stress_dim": dim_s, "stress_rank": rank})
        best = max(best, rank)
        ran = t + 1
        if rank == target:
            verdict = True
            break
    return CertificateReport(
        kind="GGR",
        verdict=verdict,
        target=target,
        observed={"max_stress_rank": best, "connectivity": connectivity},
        trials=ran,
        seed=seed,
        tolerance=_tolerance_dict(policy),
        caveat="probabilistic",
        evidence=evidence,
    )


def super_stable(fw, sm, policy=TolerancePolicy()):
    """PSD stress of rank n-d-1 with edge directions off every conic at
    infinity: the certificate for universal rigidity.

    Raises NotAStress when the matrix is not a stress for the framework
    and SpanDeficient when the configuration does not span.
    """
    n, d = fw.coordinates.shape
    if affine_span_dimension(fw.coordinates, policy) < d:
        raise SpanDeficient(f"configuration does not affinely span R^{d}")
    if not is_stress_for(sm, fw, policy):
        raise NotAStress("matrix is not an equilibrium stress for the framework")
    if not is_psd(sm.matrix, policy):
        return False
    if numeric_rank(sm.matrix, policy) != n - d - 1:
        return False
    return not on_conic_at_infinity(fw, policy)


@dataclass(frozen=True)
class URConstruction:
    framework: object
    stress: object
    report: CertificateReport


def construct_universally_rigid(g, d, seed=0, retry_cap=UR_RETRY_CAP, policy=TolerancePolicy()):
    """Build a framework certified universally rigid by its own stress.

    Requires a YES from the generic global rigidity test.  Each attempt
    takes a Euclidean orthogonal representation, centers it, reads off a
    PSD stress, recovers the kernel framework, and keeps it only when it
    is infinitesimally rigid and the super-stability test passes.
    """
    gate = ggr_test(g, d, seed=seed, policy=policy)
    if not gate.verdict:
        raise InvalidInput("graph failed the generic global rigidity test; refusing to construct")

    n = g.num_vertices
    evidence = []
    for t in range(retry_cap):
        entry = {"attempt": t}
        try:
            rep = build_gor(g, d, signature=None, seed=_attempt_seed(seed, t), policy=policy)
            _, centered = center_gor(rep, policy, seed=_attempt_seed(seed, t))
            sm = lss_stress(centered, policy)
            fw = kernel_framework(sm, d, policy=policy)
        except (ConstructionFailed, OutsideDomain, NotConnectedEnough) as exc:
            entry["failure"] = str(exc)
            evidence.append(entry)
            continue
        entry["stress_rank"] = numeric_rank(sm.matrix, policy)
        entry["infinitesimally_rigid"] = bool(infinitesimally_rigid(fw, policy))
        if not entry["infinitesimally_rigid"]:
            evidence.append(entry)
            continue
        entry["super_stable"] = bool(super_stable(fw, sm, policy))
        evidence.append(entry)
        if entry["super_stable"]:
            report = CertificateReport(
                kind="SuperStable",
                verdict=True,
                target=n - d - 1,
                observed=entry,
                trials=t + 1,
                seed=seed,
                tolerance=_tolerance_dict(policy),
                caveat="certified-generic",
                evidence=evidence,
            )
            return URConstruction(fw, sm, report)
    raise ConstructionFailed(
        f"no super-stable framework in {retry_cap} attempts (seed {seed}); "
        f"last evidence: {evidence[-1] if evidence else 'none'}"
    )


def _attempt_seed(seed, t):
    # distinct deterministic stream per attempt
    return int(np.random.SeedSequence((seed, t)).generate_state(1)[0])


def _framework_corank(g, p, policy):
    from .frameworks import Framework

    return g.num_edges - numeric_rank(rigidity_matrix(Framework(g, p)), policy)


def _sample_gstress_framework(g, d, seed, policy):
    """One random framework carrying a general-position stress, via the
    clique route when available, else the Gram route."""
    clique = find_clique(g, d + 1)
    if clique is not None:
        rng = _trial_rng(seed, 11)
        w = rng.standard_normal(len(non_clique_edges(g, clique)))
        res = rubber_band_stress(g, d, w, clique, policy)
        return res.framework, res.stress_class.is_gstress
    rep = build_gor(g, d, seed=seed, policy=policy)
    _, centered = center_gor(rep, policy, seed=seed)
    sm = lss_stress(centered, policy)
    from .stresses import classify

    cls = classify(g, sm, d, policy)
    fw = kernel_framework(sm, d, policy=policy)
    return fw, cls.is_gstress


def corank_stats(g, d, samples=CORANK_SAMPLES, seed=0, policy=TolerancePolicy()):
    """Generic corank versus corank over stressed frameworks, plus the
    dimension identity probe.

    The generic corank is the minimum rigidity-matrix cokernel dimension
    over random configurations; the stressed corank minimizes over
    frameworks constructed to carry a general-position stress.  Generic
    global rigidity forces the two to agree; a strict gap at a
    (d+1)-connected graph shows the graph is not generically globally
    rigid.
    """
    n = g.num_vertices
    if n < d + 2:
        raise InvalidInput(f"need at least d+2 = {d + 2} vertices, got {n}")
    if vertex_connectivity(g) < d + 1:
        raise NotConnectedEnough(f"graph is not {d + 1}-connected")

    generic = None
    for t in range(samples):
        rng = _trial_rng(seed, 0, t)
        p = rng.standard_normal((n, d))
        c = _framework_corank(g, p, policy)
        generic = c if generic is None else min(generic, c)

    stressed = None
    rejected = 0
    for t in range(samples):
        try:
            fw, is_g = _sample_gstress_framework(g, d, _attempt_seed(seed, 1000 + t), policy)
        except (OutsideDomain, ConstructionFailed) as exc:
            rejected += 1
            continue
        if not is_g:
            rejected += 1
            continue
        c = _framework_corank(g, fw.coordinates, policy)
        stressed = c if stressed is None else min(stressed, c)
    if stressed is None:
        raise ConstructionFailed(f"all {samples} stressed samples were rejected")

    # dimension identity: the stressed-framework family has dimension
    # m + (d+1 choose 2) - stressedCorank; numerically it is the rank of
    # the stress-to-pinned-framework map plus the d(d+1) normalization dofs
    framework_map_rank = _stress_to_framework_rank(g, d, seed, policy)
    dim_probed = framework_map_rank + d * (d + 1)
    dim_expected = g.num_edges + comb(d + 1, 2) - stressed
    identity_ok = bool(dim_probed == dim_expected)

    return CertificateReport(
        kind="CorankStats",
        verdict="equal" if generic == stressed else "separated",
        target={"identity_dim": dim_expected},
        observed={
            "generic_corank": generic,
            "stressed_corank": stressed,
            "rejected_samples": rejected,
            "framework_map_rank": framework_map_rank,
            "gstressable_dim_probed": dim_probed,
            "identity_ok": identity_ok,
        },
        trials=samples,
        seed=seed,
        tolerance=_tolerance_dict(policy),
        caveat="probabilistic",
        evidence=[],
    )


def _fd_jacobian(func, x0, step=FD_STEP):
    """Central-difference Jacobian of a vector map."""
    base = func(x0)
    jac = np.zeros((base.shape[0], x0.shape[0]))
    for i in range(x0.shape[0]):
        hi = x0.copy()
        lo = x0.copy()
        hi[i] += step
        lo[i] -= step
        jac[:, i] = (func(hi) - func(lo)) / (2 * step)
    return jac


def _fd_policy(policy):
    return TolerancePolicy(rel_tol=max(policy.rel_tol, FD_RANK_REL_TOL), abs_floor=policy.abs_floor)


def _stress_to_framework_rank(g, d, seed, policy):
    """FD rank of weights -> pinned kernel framework, along the clique
    parameterization when available, else through the Gram route."""
    clique = find_clique(g, d + 1)
    if clique is not None:
        k = len(non_clique_edges(g, clique))
        rng = _trial_rng(seed, 23)
        w0 = rng.standard_normal(k)

        def pinned_framework(w):
            res = rubber_band_stress(g, d, w, clique, policy)
            return res.framework.coordinates.reshape(-1)

        jac = _fd_jacobian(pinned_framework, w0)
        return numeric_rank(jac, _fd_policy(policy))

    # Gram route: differential of centered vectors -> kernel framework,
    # restricted to the tangent space of the centered representations
    rep = _centered_rep(g, d, seed, policy)
    tangent = _centered_tangent_basis(rep, policy)
    sm = lss_stress(rep, policy)
    pins = _default_pins(sm, d, policy)

    def framework_of(flat):
        vectors = flat.reshape(rep.vectors.shape)
        candidate = lss_stress(
            type(rep)(rep.graph, vectors, rep.signature), policy
        )
        return kernel_framework(candidate, d, pins=pins, policy=policy).coordinates.reshape(-1)

    x0 = rep.vectors.reshape(-1)
    jac_full = _fd_jacobian(framework_of, x0)
    jac = jac_full @ tangent.T
    return numeric_rank(jac, _fd_policy(policy))


def _default_pins(sm, d, policy):
    """Pin set kernel_framework would pick, frozen so finite differences
    stay on one branch of the normalization."""
    from .stresses import _first_invertible_pins, _kernel_columns

    _, kern = _kernel_columns(sm, d, policy)
    return _first_invertible_pins(kern, d, policy)


def _centered_rep(g, d, seed, policy):
    rep = build_gor(g, d, seed=seed, policy=policy)
    _, centered = center_gor(rep, policy, seed=seed)
    return centered


def _centered_tangent_basis(rep, policy):
    """Orthonormal rows spanning the tangent of {orthogonality + zero sum}
    at the representation, in flattened (n*D) coordinates."""
    vecs = rep.vectors
    n, rep_dim = vecs.shape
    sig = np.array(rep.signature, dtype=np.float64)
    rows = []
    for i, j in rep.graph.non_edges():
        row = np.zeros(n * rep_dim)
        row[i * rep_dim:(i + 1) * rep_dim] = sig * vecs[j]
        row[j * rep_dim:(j + 1) * rep_dim] = sig * vecs[i]
        rows.append(row)
    for c in range(rep_dim):
        row = np.zeros(n * rep_dim)
        row[c::rep_dim] = 1.0
        rows.append(row)
    return kernel_basis(np.array(rows), policy).vectors


def dimension_probe(g, d, seed=0, policy=TolerancePolicy(), points=PROBE_POINTS, route="auto"):
    """Numerical dimension of the general-position stress manifold,
    expected m - (d+1 choose 2).

    Clique route: finite-difference rank of the weights-to-stress
    parameterization at random weight points.  Gram route (forced with
    route='lss', default for clique-free graphs): rank of the Gram
    differential on the tangent space of centered representations.
    """
    n = g.num_vertices
    if n < d + 2:
        raise InvalidInput(f"need at least d+2 = {d + 2} vertices, got {n}")
    if vertex_connectivity(g) < d + 1:
        raise NotConnectedEnough(f"graph is not {d + 1}-connected")
    if route not in ("auto", "rubber-band", "lss"):
        raise InvalidInput(f"unknown route {route!r}")
    target = g.num_edges - comb(d + 1, 2)
    clique = find_clique(g, d + 1) if route in ("auto", "rubber-band") else None
    if route == "rubber-band" and clique is None:
        raise InvalidInput("rubber-band route needs a (d+1)-clique")

    ranks = []
    evidence = []
    for t in range(points):
        if clique is not None:
            k = len(non_clique_edges(g, clique))
            rng = _trial_rng(seed, 31, t)
            w0 = rng.standard_normal(k)

            def stress_of(w):
                return rubber_band_stress(g, d, w, clique, policy).stress.edge_values()

            jac = _fd_jacobian(stress_of, w0)
            r = numeric_rank(jac, _fd_policy(policy))
            evidence.append({"point": t, "route": "rubber-band", "rank": r})
        else:
            rep = _centered_rep(g, d, _attempt_seed(seed, 31 + t), policy)
            tangent = _centered_tangent_basis(rep, policy)
            sig = np.array(rep.signature, dtype=np.float64)
            vecs = rep.vectors
            cols = []
            for row in tangent:
                dot = row.reshape(vecs.shape)
                dgram = (dot * sig) @ vecs.T + (vecs * sig) @ dot.T
                cols.append([-dgram[i, j] for i, j in g.edges])
            jac = np.array(cols).T
            r = numeric_rank(jac, policy)
            evidence.append({"point": t, "route": "lss", "tangent_dim": tangent.shape[0], "rank": r})
        ranks.append(r)

    return CertificateReport(
        kind="DimensionProbe",
        verdict=all(r == target for r in ranks),
        target=target,
        observed={"ranks": ranks, "min_rank": min(ranks), "max_rank": max(ranks)},
        trials=points,
        seed=seed,
        tolerance=_tolerance_dict(policy),
        caveat="probabilistic",
        evidence=evidence,
    )


def gor_dimension_probe(g, d, seed=0, policy=TolerancePolicy()):
    """Numerical dimension of the orthogonal-representation manifold:
    n*D minus the rank of the orthogonality constraints, expected
    n*D - #non-edges."""
    n = g.num_vertices
    rep = build_gor(g, d, seed=seed, policy=policy)
    vecs = rep.vectors
    rep_dim = rep.rep_dim
    sig = np.array(rep.signature, dtype=np.float64)
    rows = []
    for i, j in g.non_edges():
        row = np.zeros(n * rep_dim)
        row[i * rep_dim:(i + 1) * rep_dim] = sig * vecs[j]
        row[j * rep_dim:(j + 1) * rep_dim] = sig * vecs[i]
        rows.append(row)
    rank = numeric_rank(np.array(rows), policy) if rows else 0
    dim = n * rep_dim - rank
    target = n * rep_dim - len(g.non_edges())
    return CertificateReport(
        kind="DimensionProbe",
        verdict=dim == target,
        target=target,
        observed={"constraint_rank": rank, "dimension": dim},
        trials=1,
        seed=seed,
        tolerance=_tolerance_dict(policy),
        caveat="probabilistic",
        evidence=[{"non_edges": len(g.non_edges()), "constraint_rank": rank}],
    )
