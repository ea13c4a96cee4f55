import numpy as np
import pytest

from stresskit.errors import InvalidInput, SpanDeficient
from stresskit.frameworks import (
    Framework,
    affine_general_position,
    affine_span_dimension,
    infinitesimally_rigid,
    linear_general_position,
    load_framework,
    maxwell_index,
    neighborhood_spans,
    on_conic_at_infinity,
    rigidity_matrix,
    save_framework,
)
from stresskit.graphs import builtin_graph, complete_graph, cycle_graph, path_graph
from stresskit.linalg import numeric_rank

SQUARE = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])


def k4_square():
    return Framework(complete_graph(4), SQUARE)


def c4_square():
    # vertices in perimeter order, so the cycle edges trace the sides
    return Framework(cycle_graph(4), SQUARE[[0, 1, 3, 2]])


def test_framework_validates_shape():
    with pytest.raises(InvalidInput):
        Framework(complete_graph(4), np.zeros((3, 2)))
    with pytest.raises(InvalidInput):
        Framework(complete_graph(4), np.zeros(8))
    with pytest.raises(InvalidInput):
        Framework(complete_graph(4), np.full((4, 2), np.nan))


def test_rigidity_matrix_single_bar():
    fw = Framework(path_graph(2), np.array([[0.0], [2.0]]))
    np.testing.assert_array_equal(rigidity_matrix(fw), [[-2.0, 2.0]])


def test_rigidity_matrix_block_layout():
    fw = k4_square()
    r = rigidity_matrix(fw)
    assert r.shape == (6, 8)
    # edge (0, 1): p0 - p1 = (-1, 0) in block 0, negated in block 1
    np.testing.assert_array_equal(r[0], [-1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0])


def test_trivial_motions_are_annihilated():
    rng = np.random.default_rng(5)
    for d in (1, 2, 3):
        g, _ = builtin_graph("w5")
        p = rng.standard_normal((6, d))
        r = rigidity_matrix(Framework(g, p))
        for a in range(d):
            shift = np.zeros((6, d))
            shift[:, a] = 1.0
            np.testing.assert_allclose(r @ shift.reshape(-1), 0.0, atol=1e-12)
        for a in range(d):
            for b in range(a + 1, d):
                rot = np.zeros((6, d))
                rot[:, a] = p[:, b]
                rot[:, b] = -p[:, a]
                np.testing.assert_allclose(r @ rot.reshape(-1), 0.0, atol=1e-12)


def test_rigidity_rank_frozen_examples():
    assert numeric_rank(rigidity_matrix(k4_square())) == 5
    assert numeric_rank(rigidity_matrix(c4_square())) == 4


def test_infinitesimally_rigid():
    assert infinitesimally_rigid(k4_square())
    assert not infinitesimally_rigid(c4_square())


def test_infinitesimally_rigid_needs_span():
    collinear = Framework(complete_graph(3), np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]))
    with pytest.raises(SpanDeficient):
        infinitesimally_rigid(collinear)


def test_affine_span_dimension():
    assert affine_span_dimension(SQUARE) == 2
    assert affine_span_dimension(np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]])) == 1
    assert affine_span_dimension(np.array([[3.0, 4.0]])) == 0
    assert affine_span_dimension(np.empty((0, 2))) == -1


def test_linear_general_position():
    good = np.vstack([np.eye(3), [1.0, 1.0, 1.0]])
    check = linear_general_position(good)
    assert check and check.exact and check.witness is None
    bad = np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, 1.0, 0.0]])
    check = linear_general_position(bad)
    assert not check
    assert check.witness == (0, 1, 2)


def test_affine_general_position():
    assert affine_general_position(SQUARE)
    with_collinear = np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [0.0, 1.0]])
    check = affine_general_position(with_collinear)
    assert not check
    assert check.witness == (0, 1, 2)


def test_k33_hexagon_general_position():
    # parts {0,1,2} and {3,4,5} on alternating corners of a regular hexagon
    angles = np.pi / 3.0 * np.arange(6)
    hexagon = np.stack([np.cos(angles), np.sin(angles)], axis=1)
    coords = hexagon[[0, 2, 4, 1, 3, 5]]
    assert affine_general_position(coords)


def test_neighborhood_spans():
    assert neighborhood_spans(k4_square())
    line = Framework(path_graph(3), np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]))
    assert not neighborhood_spans(line)


def test_on_conic_at_infinity():
    # the square's sides use only two directions: a (degenerate) conic
    assert on_conic_at_infinity(c4_square())
    assert not on_conic_at_infinity(k4_square())
    bar = Framework(path_graph(2), np.array([[0.0], [1.0]]))
    assert not on_conic_at_infinity(bar)


def test_maxwell_index():
    assert maxwell_index(complete_graph(4), 2) == 1
    assert maxwell_index(builtin_graph("w5")[0], 2) == 1
    assert maxwell_index(builtin_graph("prism3")[0], 2) == 0
    assert maxwell_index(cycle_graph(4), 1) == 1
    assert maxwell_index(path_graph(4), 1) == 0


def test_json_round_trip(tmp_path):
    fw = k4_square()
    path = tmp_path / "fw.json"
    save_framework(fw, path)
    back = load_framework(path)
    assert back.graph == fw.graph
    np.testing.assert_array_equal(back.coordinates, fw.coordinates)


def test_load_framework_errors(tmp_path):
    with pytest.raises(InvalidInput):
        load_framework(tmp_path / "missing.json")
    bad_dim = tmp_path / "bad.json"
    bad_dim.write_text(
        '{"graph": {"num_vertices": 2, "edges": [[0, 1]]}, "dim": 3,'
        ' "coordinates": [[0.0], [1.0]]}'
    )
    with pytest.raises(InvalidInput):
        load_framework(bad_dim)
