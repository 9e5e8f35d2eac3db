import pytest

from cubelab.cubes.cube import build_cube
from cubelab.cubes.render import cube_graph, grid_graph, to_graph, to_dot, EXACT_COLOR, INEXACT_COLOR
from cubelab.cubes.sequence import build_sequence_pointed
from cubelab.models.relations.eqrel import EqRel


@pytest.mark.unit_test
def test_cube_graph(group_context, z6, z6_pair):
    graph = cube_graph(build_cube(group_context, z6, z6_pair))
    assert sorted(graph.nodes) == ["00", "01", "10", "11"]
    assert graph.number_of_edges() == 4
    assert graph.nodes["11"]["label"] == '"11\\n|6|"'
    assert all(color == EXACT_COLOR for _, _, color in graph.edges(data="color"))


@pytest.mark.unit_test
def test_grid_graph(group_context, z6, z6_pair):
    graph = grid_graph(build_sequence_pointed(group_context, z6, z6_pair))
    assert graph.number_of_nodes() == 9
    assert graph.number_of_edges() == 12
    assert graph.has_edge("21", "11", key="m0")


@pytest.mark.unit_test
def test_inexact_lines_are_coloured(group_context, v4, v4_triple):
    graph = grid_graph(build_sequence_pointed(group_context, v4, v4_triple))
    colours = {(u, v, k): c for u, v, k, c in graph.edges(keys=True, data="color")}
    assert colours[("200", "100", "m0")] == INEXACT_COLOR
    assert colours[("211", "111", "m0")] == EXACT_COLOR


@pytest.mark.unit_test
def test_dot_is_deterministic(group_context, v4, v4_triple):
    first = to_dot(build_sequence_pointed(group_context, v4, v4_triple))
    second = to_dot(build_sequence_pointed(group_context, v4, v4_triple))
    assert first == second
    assert "digraph" in first


@pytest.mark.unit_test
def test_only_cubes_and_grids_render():
    with pytest.raises(ValueError):
        to_graph(EqRel.discrete(2))
