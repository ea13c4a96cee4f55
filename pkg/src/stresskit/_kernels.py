"""Hot subset-rank scans, with a numba backend and a pure-numpy fallback.

The expensive inner loops of the general-position and stress-classification
tests all reduce to the same question: given a matrix ``a`` and a list of
column subsets, which subsets select linearly independent columns?  A subset
counts as independent when the smallest singular value of the selected block
clears ``max(rel_tol * s_max, abs_floor)``.

Backend selection: set ``STRESSKIT_BACKEND=numpy`` to force the vectorized
numpy path, ``STRESSKIT_BACKEND=numba`` to require the jitted path (import
error if numba is missing).  Unset, numba is used when importable.
"""

import itertools
import os

import numpy as np

ENV_BACKEND = "STRESSKIT_BACKEND"

# numpy path: subsets per batched SVD call, bounds memory and gives the
# scan an early exit at chunk granularity
_CHUNK = 2048


def combinations_array(n, k):
    """All k-element subsets of range(n) as an (num, k) int64 array, in
    lexicographic order."""
    if k < 0 or k > n:
        return np.empty((0, max(k, 0)), dtype=np.int64)
    if k == 0:
        return np.empty((1, 0), dtype=np.int64)
    flat = np.fromiter(
        itertools.chain.from_iterable(itertools.combinations(range(n), k)),
        dtype=np.int64,
    )
    return flat.reshape(-1, k)


def _np_first_dependent(a, subsets, rel_tol, abs_floor):
    num = subsets.shape[0]
    for start in range(0, num, _CHUNK):
        block = subsets[start:start + _CHUNK]
        sub = np.moveaxis(a[:, block], 1, 0)
        s = np.linalg.svd(sub, compute_uv=False)
        thresh = np.maximum(rel_tol * s[:, 0], abs_floor)
        bad = np.nonzero(s[:, -1] <= thresh)[0]
        if bad.size:
            return start + int(bad[0])
    return -1


def _np_first_independent(a, subsets, rel_tol, abs_floor):
    num = subsets.shape[0]
    for start in range(0, num, _CHUNK):
        block = subsets[start:start + _CHUNK]
        sub = np.moveaxis(a[:, block], 1, 0)
        s = np.linalg.svd(sub, compute_uv=False)
        thresh = np.maximum(rel_tol * s[:, 0], abs_floor)
        good = np.nonzero(s[:, -1] > thresh)[0]
        if good.size:
            return start + int(good[0])
    return -1


def _build_numba_impls():
    from numba import njit

    @njit(cache=True)
    def nb_first_dependent(a, subsets, rel_tol, abs_floor):
        r = a.shape[0]
        num, k = subsets.shape
        buf = np.empty((r, k))
        for t in range(num):
            for j in range(k):
                col = subsets[t, j]
                for i in range(r):
                    buf[i, j] = a[i, col]
            _, s, _ = np.linalg.svd(buf, full_matrices=False)
            thresh = rel_tol * s[0]
            if thresh < abs_floor:
                thresh = abs_floor
            if s[k - 1] <= thresh:
                return t
        return -1

    @njit(cache=True)
    def nb_first_independent(a, subsets, rel_tol, abs_floor):
        r = a.shape[0]
        num, k = subsets.shape
        buf = np.empty((r, k))
        for t in range(num):
            for j in range(k):
                col = subsets[t, j]
                for i in range(r):
                    buf[i, j] = a[i, col]
            _, s, _ = np.linalg.svd(buf, full_matrices=False)
            thresh = rel_tol * s[0]
            if thresh < abs_floor:
                thresh = abs_floor
            if s[k - 1] > thresh:
                return t
        return -1

    return nb_first_dependent, nb_first_independent


_IMPLS = {"numpy": (_np_first_dependent, _np_first_independent)}
_ACTIVE = "numpy"


def activate(name):
    """Select the backend by name ('numba' or 'numpy').  Returns the name
    actually activated."""
    global _ACTIVE
    if name == "numpy":
        _ACTIVE = "numpy"
        return _ACTIVE
    if name == "numba":
        if "numba" not in _IMPLS:
            _IMPLS["numba"] = _build_numba_impls()
        _ACTIVE = "numba"
        return _ACTIVE
    raise ValueError(f"unknown backend {name!r}")


def backend_name():
    return _ACTIVE


def _init_from_env():
    requested = os.environ.get(ENV_BACKEND, "").strip().lower()
    if requested == "numpy":
        return activate("numpy")
    if requested == "numba":
        return activate("numba")
    try:
        return activate("numba")
    except ImportError:
        return activate("numpy")


def _prepare(a, subsets):
    a = np.ascontiguousarray(a, dtype=np.float64)
    subsets = np.ascontiguousarray(subsets, dtype=np.int64)
    if subsets.ndim != 2:
        raise ValueError("subsets must be a 2-D index array")
    if subsets.shape[0] and subsets.shape[1] > a.shape[0]:
        raise ValueError("subset size exceeds row count, columns cannot be independent")
    return a, subsets


def first_dependent_columns(a, subsets, rel_tol, abs_floor):
    """Index of the first subset whose columns of ``a`` are linearly
    dependent under the tolerance pair, or -1 if every subset is
    independent."""
    a, subsets = _prepare(a, subsets)
    if subsets.shape[0] == 0 or subsets.shape[1] == 0:
        return -1
    return int(_IMPLS[_ACTIVE][0](a, subsets, rel_tol, abs_floor))


def first_independent_columns(a, subsets, rel_tol, abs_floor):
    """Index of the first subset whose columns of ``a`` are linearly
    independent under the tolerance pair, or -1 if none are."""
    a, subsets = _prepare(a, subsets)
    if subsets.shape[0] == 0:
        return -1
    if subsets.shape[1] == 0:
        return 0
    return int(_IMPLS[_ACTIVE][1](a, subsets, rel_tol, abs_floor))


def warmup():
    """Trigger JIT compilation of the active backend on tiny inputs."""
    a = np.eye(3)
    subs = combinations_array(3, 2)
    first_dependent_columns(a, subs, 1e-9, 1e-12)
    first_independent_columns(a, subs, 1e-9, 1e-12)


_init_from_env()
