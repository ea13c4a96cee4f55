"""Loads on frameworks and their resolution by edge forces.

A load assigns a force vector to every vertex.  It is an equilibrium
load when the net force and the net torque (the antisymmetric wedge
accumulation) both vanish; exactly those loads can be resolved on a
statically rigid framework.
"""

import json

import numpy as np

from .errors import InvalidInput, NotEquilibrium, Unresolvable
from .frameworks import rigidity_matrix
from .linalg import TolerancePolicy, numeric_rank

__all__ = [
    "wedge",
    "is_equilibrium_load",
    "equilibrium_constraint_matrix",
    "equilibrium_load_space_dimension",
    "resolve_load",
    "induced_load",
    "restrict_load_to_support",
    "load_forces",
    "save_forces",
]


def _check_load(coords, forces):
    coords = np.asarray(coords, dtype=np.float64)
    forces = np.asarray(forces, dtype=np.float64)
    if coords.shape != forces.shape or coords.ndim != 2:
        raise InvalidInput(
            f"forces must match configuration shape {coords.shape}, got {forces.shape}"
        )
    if forces.size and not np.all(np.isfinite(forces)):
        raise InvalidInput("forces contain non-finite entries")
    return coords, forces


def wedge(f, p):
    """Antisymmetric d x d matrix f p^T - p f^T."""
    f = np.asarray(f, dtype=np.float64)
    p = np.asarray(p, dtype=np.float64)
    return np.outer(f, p) - np.outer(p, f)


def is_equilibrium_load(coords, forces, policy=TolerancePolicy()):
    """Zero net force and zero net torque, to within a tolerance scaled by
    max|f_i| * max|p_i|."""
    coords, forces = _check_load(coords, forces)
    scale = float(np.max(np.abs(forces), initial=0.0) * np.max(np.abs(coords), initial=0.0))
    tol = policy.rel_tol * scale + policy.abs_floor
    if np.max(np.abs(forces.sum(axis=0)), initial=0.0) > tol:
        return False
    d = coords.shape[1]
    torque = np.zeros((d, d))
    for f, p in zip(forces, coords):
        torque += wedge(f, p)
    return bool(np.max(np.abs(torque)) <= tol)


def equilibrium_constraint_matrix(coords):
    """Matrix whose kernel, inside R^(d*n), is the equilibrium loads.

    d rows for the net-force components followed by d(d-1)/2 rows for the
    independent torque components, acting on vertex-major flattened loads.
    """
    coords = np.asarray(coords, dtype=np.float64)
    n, d = coords.shape
    rows = []
    for a in range(d):
        row = np.zeros(d * n)
        row[a::d] = 1.0
        rows.append(row)
    for a in range(d):
        for b in range(a + 1, d):
            row = np.zeros(d * n)
            row[a::d] = coords[:, b]
            row[b::d] = -coords[:, a]
            rows.append(row)
    return np.array(rows)


def equilibrium_load_space_dimension(coords, policy=TolerancePolicy()):
    """dim of the equilibrium loads; d*n - d(d+1)/2 for spanning points."""
    coords = np.asarray(coords, dtype=np.float64)
    n, d = coords.shape
    return d * n - numeric_rank(equilibrium_constraint_matrix(coords), policy)


def resolve_load(fw, forces, policy=TolerancePolicy()):
    """Edge-force vector rho with sum_j rho_ij (p_j - p_i) = -f_i at every
    vertex, computed as the minimum-norm least-squares solution.

    Raises NotEquilibrium for loads with net force or torque, and
    Unresolvable when the least-squares residual stays above tolerance.
    """
    coords, forces = _check_load(fw.coordinates, forces)
    if not is_equilibrium_load(coords, forces, policy):
        raise NotEquilibrium("load has nonzero net force or net torque")
    r = rigidity_matrix(fw)
    target = forces.reshape(-1)
    rho, *_ = np.linalg.lstsq(r.T, target, rcond=None)
    scale = float(np.max(np.abs(forces), initial=0.0) * np.max(np.abs(coords), initial=0.0))
    tol = policy.rel_tol * scale + policy.abs_floor
    residual = float(np.max(np.abs(r.T @ rho - target), initial=0.0))
    if residual > tol:
        raise Unresolvable(f"best residual {residual:.3e} exceeds tolerance {tol:.3e}")
    return rho


def induced_load(fw, rho):
    """Load produced by edge forces rho: f_i = sum_j rho_ij (p_i - p_j)."""
    rho = np.asarray(rho, dtype=np.float64)
    if rho.shape != (fw.graph.num_edges,):
        raise InvalidInput(f"edge forces must have shape ({fw.graph.num_edges},)")
    r = rigidity_matrix(fw)
    return (r.T @ rho).reshape(fw.num_vertices, fw.dim)


def restrict_load_to_support(forces, support, policy=TolerancePolicy()):
    """Rows of the load at the support vertices, in sorted vertex order.

    Raises InvalidInput if any force off the support is nonzero beyond the
    policy threshold at the load's own scale.
    """
    forces = np.asarray(forces, dtype=np.float64)
    if forces.ndim != 2:
        raise InvalidInput("forces must be 2-D")
    support = sorted(set(int(v) for v in support))
    if support and not (0 <= support[0] and support[-1] < forces.shape[0]):
        raise InvalidInput("support vertex out of range")
    off = np.ones(forces.shape[0], dtype=bool)
    off[support] = False
    scale = float(np.max(np.abs(forces), initial=0.0))
    worst = float(np.max(np.abs(forces[off]), initial=0.0))
    if worst > policy.threshold(scale):
        raise InvalidInput(f"load is not supported on {support}: off-support force {worst:.3e}")
    return forces[support]


def load_forces(path):
    """Read a load from JSON: {"forces": [[...], ...]}."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read load from {path}: {exc}") from exc
    if not isinstance(data, dict) or "forces" not in data:
        raise InvalidInput('load JSON must be an object with a "forces" key')
    forces = np.asarray(data["forces"], dtype=np.float64)
    if forces.ndim != 2:
        raise InvalidInput("forces must be a list of per-vertex vectors")
    return forces


def save_forces(forces, path):
    forces = np.asarray(forces, dtype=np.float64)
    with open(path, "w") as fh:
        json.dump({"forces": [[float(x) for x in row] for row in forces]}, fh, indent=2)
        fh.write("\n")
