import json

import numpy as np
import pytest

from stresskit.certificates import (
    as_jsonable,
    construct_universally_rigid,
    corank_stats,
    dimension_probe,
    ggr_test,
    gor_dimension_probe,
    super_stable,
)
from stresskit.errors import (
    InvalidInput,
    NotAStress,
    NotConnectedEnough,
    SpanDeficient,
)
from stresskit.frameworks import Framework, infinitesimally_rigid
from stresskit.graphs import builtin_graph, complete_graph, path_graph
from stresskit.stresses import to_matrix

SQUARE = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
K4_SQUARE_OMEGA = np.array([1.0, 1.0, -1.0, -1.0, 1.0, 1.0])


def k4_square():
    return Framework(complete_graph(4), SQUARE)


def test_ggr_k4_plane():
    report = ggr_test(*builtin_graph("k4"))
    assert report.verdict is True
    assert report.kind == "GGR"
    assert report.caveat == "probabilistic"
    assert report.trials == 1           # first random framework already hits rank 1
    assert report.target == 1


def test_ggr_cycle_on_line():
    g, _ = builtin_graph("cycle4")
    report = ggr_test(g, 1)
    assert report.verdict is True


def test_ggr_k33_plane_no():
    report = ggr_test(*builtin_graph("k33"))
    assert report.verdict is False
    assert report.trials == 50
    assert report.observed["max_stress_rank"] < report.target


def test_ggr_prism3_plane_no():
    report = ggr_test(*builtin_graph("prism3"))
    assert report.verdict is False


def test_ggr_connectivity_gate_is_certified():
    report = ggr_test(path_graph(4), 1)
    assert report.verdict is False
    assert report.caveat == "certified-generic"
    assert report.trials == 0
    assert report.evidence[0]["gate"] == "connectivity"


def test_ggr_complete_graphs_all_dimensions():
    for d in (1, 2, 3):
        for n in range(d + 2, 8):
            report = ggr_test(complete_graph(n), d)
            assert report.verdict is True, (n, d)


def test_ggr_input_checks():
    with pytest.raises(InvalidInput):
        ggr_test(complete_graph(3), 2)


def test_ggr_deterministic():
    a = ggr_test(*builtin_graph("prism3"), seed=7)
    b = ggr_test(*builtin_graph("prism3"), seed=7)
    assert json.dumps(a.to_json_dict(), sort_keys=True) == json.dumps(b.to_json_dict(), sort_keys=True)


def test_super_stable_k4_square():
    g = complete_graph(4)
    assert super_stable(k4_square(), to_matrix(g, K4_SQUARE_OMEGA))
    assert not super_stable(k4_square(), to_matrix(g, -K4_SQUARE_OMEGA))
    assert not super_stable(k4_square(), to_matrix(g, np.zeros(6)))


def test_super_stable_requires_matching_stress():
    g = complete_graph(4)
    rng = np.random.default_rng(0)
    other = Framework(g, rng.standard_normal((4, 2)))
    with pytest.raises(NotAStress):
        super_stable(other, to_matrix(g, K4_SQUARE_OMEGA))


def test_super_stable_requires_span():
    g = complete_graph(4)
    flat = Framework(g, np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [3.0, 0.0]]))
    with pytest.raises(SpanDeficient):
        super_stable(flat, to_matrix(g, K4_SQUARE_OMEGA))


def test_construct_universally_rigid_k4():
    result = construct_universally_rigid(*builtin_graph("k4"), seed=0)
    assert result.report.kind == "SuperStable"
    assert result.report.caveat == "certified-generic"
    assert result.report.verdict is True
    # independent re-verification of the returned pair
    assert infinitesimally_rigid(result.framework)
    assert super_stable(result.framework, result.stress)


def test_construct_universally_rigid_rejects_non_ggr():
    with pytest.raises(InvalidInput):
        construct_universally_rigid(*builtin_graph("prism3"))


def test_construct_universally_rigid_deterministic():
    a = construct_universally_rigid(*builtin_graph("k4"), seed=3)
    b = construct_universally_rigid(*builtin_graph("k4"), seed=3)
    np.testing.assert_array_equal(a.framework.coordinates, b.framework.coordinates)
    np.testing.assert_array_equal(a.stress.matrix, b.stress.matrix)


def test_corank_stats_k4_equal():
    report = corank_stats(*builtin_graph("k4"), samples=20)
    assert report.verdict == "equal"
    assert report.observed["generic_corank"] == 1
    assert report.observed["stressed_corank"] == 1
    assert report.observed["identity_ok"]


def test_corank_stats_prism3_separated():
    report = corank_stats(*builtin_graph("prism3"), samples=20)
    assert report.verdict == "separated"
    assert report.observed["generic_corank"] == 0
    assert report.observed["stressed_corank"] == 1
    assert report.observed["identity_ok"]


def test_corank_stats_gates():
    with pytest.raises(NotConnectedEnough):
        corank_stats(path_graph(4), 1, samples=5)
    with pytest.raises(InvalidInput):
        corank_stats(complete_graph(3), 2, samples=5)


def test_dimension_probe_w5():
    report = dimension_probe(*builtin_graph("w5"), points=3)
    assert report.kind == "DimensionProbe"
    assert report.target == 7
    assert report.verdict is True
    assert report.observed["min_rank"] == report.observed["max_rank"] == 7


def test_dimension_probe_k4():
    report = dimension_probe(*builtin_graph("k4"), points=3)
    assert report.target == 3
    assert report.verdict is True


def test_dimension_probe_lss_route_prism3():
    report = dimension_probe(*builtin_graph("prism3"), points=2, route="lss")
    assert report.target == 6
    assert report.verdict is True
    assert all(e["route"] == "lss" for e in report.evidence)


def test_dimension_probe_k33_uses_gram_route():
    report = dimension_probe(*builtin_graph("k33"), points=1)
    assert report.evidence[0]["route"] == "lss"
    assert report.verdict is True
    assert report.target == 9 - 3


def test_dimension_probe_route_checks():
    with pytest.raises(InvalidInput):
        dimension_probe(*builtin_graph("k33"), route="rubber-band")
    with pytest.raises(InvalidInput):
        dimension_probe(*builtin_graph("k4"), route="bogus")


def test_gor_dimension_probe_prism3():
    report = gor_dimension_probe(*builtin_graph("prism3"))
    assert report.verdict is True
    assert report.target == 12
    assert report.observed["constraint_rank"] == 6
    assert report.observed["dimension"] == 12


def test_as_jsonable_strips_numpy_types():
    payload = as_jsonable(
        {
            "a": np.int64(3),
            "b": np.float64(0.5),
            "c": np.bool_(True),
            "d": np.arange(3),
            "e": (1, 2),
        }
    )
    assert json.loads(json.dumps(payload)) == {
        "a": 3,
        "b": 0.5,
        "c": True,
        "d": [0, 1, 2],
        "e": [1, 2],
    }


def test_report_json_round_trip():
    report = ggr_test(*builtin_graph("k4"))
    text = json.dumps(report.to_json_dict(), sort_keys=True)
    assert json.loads(text)["kind"] == "GGR"
