import numpy as np
import pytest

from stresskit.constructions import (
    OrthogonalRep,
    build_gor,
    canonical_simplex,
    center_gor,
    lss_stress,
    non_clique_edges,
    parse_signature,
    rubber_band_readoff,
    rubber_band_stress,
)
from stresskit.errors import (
    ConstructionFailed,
    InvalidInput,
    NotCentered,
    NotConnectedEnough,
    OutsideDomain,
)
from stresskit.frameworks import affine_general_position
from stresskit.graphs import (
    Graph,
    builtin_graph,
    complete_graph,
    cycle_graph,
    path_graph,
    wheel_graph,
)
from stresskit.linalg import is_psd, numeric_rank
from stresskit.statics import induced_load
from stresskit.stresses import classify, is_stress_for


def test_canonical_simplex():
    np.testing.assert_array_equal(
        canonical_simplex(2), [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]
    )


def test_non_clique_edges_w5():
    g = wheel_graph(5)
    outside = non_clique_edges(g, (0, 1, 2))
    assert outside == [(0, 3), (0, 4), (0, 5), (1, 5), (2, 3), (3, 4), (4, 5)]
    assert len(outside) == g.num_edges - 3


def test_rubber_band_w5_unit_weights():
    g = wheel_graph(5)
    res = rubber_band_stress(g, 2, np.ones(7))
    assert res.clique == (0, 1, 2)
    assert res.stress_class.rank == 3
    assert res.stress_class.is_gstress
    assert is_stress_for(res.stress, res.framework)
    # pinned clique sits on the canonical simplex
    np.testing.assert_array_equal(res.framework.coordinates[:3], canonical_simplex(2))
    # free vertices are at weighted equilibrium: the stress load vanishes
    load = induced_load(res.framework, res.stress.edge_values())
    np.testing.assert_allclose(load, 0.0, atol=1e-12)
    # the outside weights survive assembly bit for bit
    np.testing.assert_array_equal(
        rubber_band_readoff(res.stress, res.clique), np.ones(7)
    )


def test_rubber_band_k4():
    g = complete_graph(4)
    rng = np.random.default_rng(8)
    w = rng.standard_normal(3)
    res = rubber_band_stress(g, 2, w)
    assert res.stress_class.rank == 1
    assert res.stress_class.is_gstress
    np.testing.assert_array_equal(rubber_band_readoff(res.stress, res.clique), w)


def test_rubber_band_input_checks():
    g = wheel_graph(5)
    with pytest.raises(InvalidInput):
        rubber_band_stress(g, 2, np.ones(6))          # wrong weight count
    with pytest.raises(InvalidInput):
        rubber_band_stress(g, 2, np.ones(7), clique=(1, 2, 3))
    with pytest.raises(InvalidInput):
        rubber_band_stress(cycle_graph(4), 2, np.ones(1))   # no triangle
    with pytest.raises(InvalidInput):
        rubber_band_stress(complete_graph(3), 2, np.ones(0))  # n < d + 2


def test_rubber_band_outside_domain_on_zero_weights():
    g = wheel_graph(5)
    with pytest.raises(OutsideDomain):
        rubber_band_stress(g, 2, np.zeros(7))


def test_rubber_band_unreachable_free_vertex():
    # triangle plus a separate bar: vertices 3 and 4 never settle
    g = Graph(5, ((0, 1), (0, 2), (1, 2), (3, 4)))
    with pytest.raises(NotConnectedEnough):
        rubber_band_stress(g, 2, np.ones(1), clique=(0, 1, 2))


def test_readoff_requires_general_position_stress():
    from stresskit.stresses import to_matrix

    g = cycle_graph(4)
    sm = to_matrix(g, np.array([2.0, -1.0, -2.0, 1.0]))
    with pytest.raises(InvalidInput):
        rubber_band_readoff(sm, (0, 1))


def test_parse_signature():
    assert parse_signature("++-") == (1, 1, -1)
    assert parse_signature(" +- ") == (1, -1)
    with pytest.raises(InvalidInput):
        parse_signature("+0-")
    with pytest.raises(InvalidInput):
        parse_signature("")


def test_build_gor_prism3():
    g, d = builtin_graph("prism3")
    rep = build_gor(g, d, seed=0)
    assert rep.rep_dim == 3
    rep.validate()
    np.testing.assert_allclose(np.linalg.norm(rep.vectors, axis=1), 1.0, atol=1e-12)
    assert rep.orthogonality_residual() <= 1e-9


def test_build_gor_gates():
    with pytest.raises(NotConnectedEnough):
        build_gor(path_graph(4), 1)      # connectivity 1 < 2
    with pytest.raises(InvalidInput):
        build_gor(complete_graph(4), 3)  # representation dimension 0
    with pytest.raises(InvalidInput):
        build_gor(builtin_graph("prism3")[0], 2, signature=(1, 1))


def test_orthogonal_rep_validation():
    g = cycle_graph(4)
    with pytest.raises(InvalidInput):
        OrthogonalRep(g, np.ones((3, 2)), (1, 1))
    with pytest.raises(InvalidInput):
        OrthogonalRep(g, np.ones((4, 2)), (1, 0))
    # vectors of non-adjacent vertices must be orthogonal
    rep = OrthogonalRep(g, np.ones((4, 2)), (1, 1))
    with pytest.raises(InvalidInput):
        rep.validate()


def test_center_gor_prism3():
    g, d = builtin_graph("prism3")
    rep = build_gor(g, d, seed=1)
    alpha, centered = center_gor(rep, seed=1)
    assert centered.is_centered()
    np.testing.assert_allclose(centered.vectors.sum(axis=0), 0.0, atol=1e-9)
    assert np.min(np.abs(alpha)) > 0.0
    np.testing.assert_allclose(centered.vectors, rep.vectors * alpha[:, None])


def test_center_gor_needs_spanning_vectors():
    g = complete_graph(4)
    flat = OrthogonalRep(g, np.tile([1.0, 0.0], (4, 1)), (1, 1))
    with pytest.raises(InvalidInput):
        center_gor(flat)


def test_lss_stress_euclidean_prism3():
    g, d = builtin_graph("prism3")
    rep = build_gor(g, d, seed=2)
    _, centered = center_gor(rep, seed=2)
    sm = lss_stress(centered)
    sm.validate()
    assert numeric_rank(sm.matrix) == 3
    assert is_psd(sm.matrix)
    cls = classify(g, sm, d)
    assert cls.rank == 3
    assert cls.is_gstress
    from stresskit.stresses import kernel_framework

    fw = kernel_framework(sm, d)
    assert affine_general_position(fw.coordinates)
    assert is_stress_for(sm, fw)


def test_lss_stress_signature_inertia():
    g, d = builtin_graph("prism3")
    rep = build_gor(g, d, signature=(1, 1, -1), seed=3)
    _, centered = center_gor(rep, seed=3)
    sm = lss_stress(centered)
    eigs = np.linalg.eigvalsh(sm.matrix)
    assert np.sum(eigs > 1e-9) == 2
    assert np.sum(eigs < -1e-9) == 1
    assert not is_psd(sm.matrix)


def test_lss_stress_requires_centering():
    g, d = builtin_graph("prism3")
    rep = build_gor(g, d, seed=4)
    with pytest.raises(NotCentered):
        lss_stress(rep)


def test_build_gor_deterministic_per_seed():
    g, d = builtin_graph("prism3")
    a = build_gor(g, d, seed=5)
    b = build_gor(g, d, seed=5)
    np.testing.assert_array_equal(a.vectors, b.vectors)


def test_center_gor_retries_exhausted():
    g, d = builtin_graph("prism3")
    rep = build_gor(g, d, seed=6)
    with pytest.raises(ConstructionFailed):
        center_gor(rep, max_attempts=0)
