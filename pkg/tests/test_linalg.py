import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from stresskit.errors import InvalidInput
from stresskit.linalg import (
    SubspaceBasis,
    TolerancePolicy,
    cokernel_basis,
    is_psd,
    kernel_basis,
    numeric_rank,
)

finite_matrices = arrays(
    np.float64,
    st.tuples(st.integers(1, 6), st.integers(1, 6)),
    elements=st.floats(min_value=-10.0, max_value=10.0),
)


def test_policy_threshold_is_max_of_both():
    policy = TolerancePolicy(rel_tol=1e-6, abs_floor=1e-10)
    assert policy.threshold(1.0) == 1e-6
    assert policy.threshold(1e-8) == 1e-10
    assert policy.threshold(0.0) == 1e-10


@pytest.mark.parametrize("rel,floor", [(0.0, 1e-12), (-1e-9, 1e-12), (1e-9, 0.0), (np.inf, 1e-12)])
def test_policy_rejects_degenerate_values(rel, floor):
    with pytest.raises(InvalidInput):
        TolerancePolicy(rel_tol=rel, abs_floor=floor)


def test_numeric_rank_splits_on_policy():
    a = np.diag([1.0, 1e-6, 1e-15])
    assert numeric_rank(a) == 2
    assert numeric_rank(a, TolerancePolicy(rel_tol=1e-3)) == 1
    assert numeric_rank(np.zeros((3, 3))) == 0
    assert numeric_rank(np.empty((0, 4))) == 0


def test_numeric_rank_of_outer_product_is_one():
    v = np.array([1.0, -2.0, 0.5])
    assert numeric_rank(np.outer(v, v)) == 1


def test_numeric_rank_rejects_non_finite():
    with pytest.raises(InvalidInput):
        numeric_rank(np.array([[1.0, np.nan]]))


def test_kernel_basis_annihilates_and_is_orthonormal():
    a = np.array([[1.0, 1.0, 0.0]])
    basis = kernel_basis(a)
    assert basis.dim == 2
    assert basis.check()
    np.testing.assert_allclose(a @ basis.vectors.T, 0.0, atol=1e-12)


def test_kernel_basis_of_empty_matrix_is_identity():
    basis = kernel_basis(np.empty((0, 3)))
    assert basis.dim == 3
    np.testing.assert_array_equal(basis.vectors, np.eye(3))


def test_cokernel_is_kernel_of_transpose():
    rng = np.random.default_rng(0)
    a = rng.standard_normal((4, 6))
    a[3] = a[0] + a[1]
    left = cokernel_basis(a)
    assert left.dim == 1
    np.testing.assert_allclose(left.vectors @ a, 0.0, atol=1e-12)


def test_is_psd_cases():
    assert is_psd(np.eye(3))
    assert not is_psd(-np.eye(3))
    v = np.array([1.0, 2.0, 3.0])
    assert is_psd(np.outer(v, v))
    assert is_psd(np.diag([1.0, -1e-12]))      # within tolerance of zero
    assert not is_psd(np.diag([1.0, -1e-6]))
    assert is_psd(np.empty((0, 0)))


def test_is_psd_needs_square():
    with pytest.raises(InvalidInput):
        is_psd(np.ones((2, 3)))


def test_subspace_basis_contains():
    basis = SubspaceBasis(3, np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]))
    assert basis.contains([2.0, -1.0, 0.0])
    assert not basis.contains([0.0, 0.0, 1.0])
    assert basis.check()


def test_subspace_basis_shape_check():
    with pytest.raises(InvalidInput):
        SubspaceBasis(3, np.ones((2, 4)))


@settings(max_examples=60, deadline=None)
@given(finite_matrices)
def test_rank_nullity(a):
    assert numeric_rank(a) + kernel_basis(a).dim == a.shape[1]


@settings(max_examples=60, deadline=None)
@given(finite_matrices)
def test_rank_transpose_invariant(a):
    assert numeric_rank(a) == numeric_rank(a.T)


@settings(max_examples=60, deadline=None)
@given(finite_matrices, st.floats(min_value=0.25, max_value=4.0))
def test_rank_scaling_invariant(a, c):
    # the relative threshold scales with the spectrum, so nonzero scaling
    # cannot change the rank decision (unless the whole spectrum sits at
    # the absolute floor, where the decision is rightly scale-sensitive)
    assume(np.max(np.abs(a)) == 0.0 or np.max(np.abs(a)) > 1e-2)
    assert numeric_rank(c * a) == numeric_rank(a)


@settings(max_examples=60, deadline=None)
@given(finite_matrices)
def test_kernel_vectors_annihilate(a):
    basis = kernel_basis(a)
    if basis.dim:
        resid = np.max(np.abs(a @ basis.vectors.T))
        scale = max(np.max(np.abs(a)), 1.0)
        assert resid <= 1e-9 * scale + 1e-12
