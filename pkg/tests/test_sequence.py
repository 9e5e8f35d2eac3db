import pytest

from cubelab.cubes.sequence import (
    NSequence, build_sequence_pointed, build_sequence_kernels, build_fork_diagram, verify_sequence, exact_lines,
    positions, key, parse_key, line_key, step,
)
from cubelab.models.abelian.fgab import FgAbGroup
from cubelab.models.abelian.lattice import IntLattice
from cubelab.models.relations.eqrel import EqRel
from cubelab.models.relations.finset import FinSet


@pytest.mark.unit_test
def test_grid_helpers():
    assert len(positions(2)) == 9
    assert key((2, 1, 0)) == "210"
    assert parse_key("210") == (2, 1, 0)
    assert line_key((1, 0, 2), 1) == "1*2"
    assert step((2, 1), 0, "m") == (1, 1)
    assert step((1, 1), 1, "e") == (1, 2)
    with pytest.raises(ValueError):
        step((0, 1), 0, "m")
    with pytest.raises(ValueError):
        parse_key("013")


@pytest.mark.unit_test
def test_z6_pointed_grid(group_context, z6, z6_pair):
    grid = build_sequence_pointed(group_context, z6, z6_pair)
    assert len(grid.objects) == 9
    assert len(grid.maps) == 12
    assert len(grid.object((1, 1))) == 6
    assert len(grid.object((2, 2))) == 1
    assert len(grid.object((2, 1))) == 3
    report = verify_sequence(grid)
    assert report.verdict
    assert len(report.trace) == 6


@pytest.mark.unit_test
def test_v4_pointed_grid_is_not_exact(group_context, v4, v4_triple):
    grid = build_sequence_pointed(group_context, v4, v4_triple)
    assert len(grid.objects) == 27
    report = verify_sequence(grid)
    assert not report.verdict
    # K1 ∨ K2 is all of V4, so the middle of this line is trivial while its kernel side is K0
    assert report.witness["line"] == "*00"
    assert report.witness["direction"] == 0
    assert report.witness["reasons"] == ["mono_not_injective"]
    assert report.witness["failing_lines"][0]["line"] == "*00"
    assert exact_lines(grid)["*00"] is False
    assert exact_lines(grid)["*11"] is True


@pytest.mark.unit_test
def test_abelian_pointed_grid(abelian_context):
    X = FgAbGroup.from_invariants([6])
    grid = build_sequence_pointed(abelian_context, X, [IntLattice(1, [[2]]), IntLattice(1, [[3]])])
    assert grid.object((1, 1)).order() == 6
    assert grid.object((2, 2)).order() == 1
    assert verify_sequence(grid).verdict


@pytest.mark.unit_test
def test_kernel_grid(group_context, z6, z6_pair):
    grid = build_sequence_kernels(group_context, z6, z6_pair)
    assert len(grid.object((1, 1))) == 6
    assert len(grid.object((0, 0))) == 1
    assert verify_sequence(grid).verdict


@pytest.mark.unit_test
def test_pointed_grid_needs_a_pointed_context(set_context):
    with pytest.raises(ValueError):
        build_sequence_pointed(set_context, FinSet(4), [EqRel(4, [[0, 1], [2, 3]])])


@pytest.mark.unit_test
def test_z6_fork_grid(group_context, z6, z6_pair):
    grid = build_fork_diagram(group_context, z6, z6_pair)
    assert grid.mode == "fork"
    assert len(grid.objects) == 9
    assert len(grid.maps) == 24
    # the corner (2, 2) is the double kernel pair, the box of the two relations
    assert group_context.size(grid.object((2, 2))) == 36
    assert verify_sequence(grid).verdict


@pytest.mark.unit_test
def test_fork_grid_limit(group_context, z6, z6_pair):
    with pytest.raises(ValueError):
        build_fork_diagram(group_context, z6, z6_pair, limit=10)


@pytest.mark.unit_test
def test_grid_json_round_trip(group_context, v4, v4_triple):
    grid = build_sequence_pointed(group_context, v4, v4_triple)
    data = grid.to_json()
    assert data["kind"] == "grid"
    restored = NSequence.from_json(data)
    assert restored.edge_list() == grid.edge_list()
    assert verify_sequence(restored).witness["line"] == "*00"


@pytest.mark.unit_test
def test_fork_grid_json_round_trip(set_context):
    relations = [EqRel(4, [[0, 1], [2, 3]]), EqRel(4, [[0, 2], [1, 3]])]
    grid = build_fork_diagram(set_context, FinSet(4), relations)
    restored = NSequence.from_json(grid.to_json())
    assert len(restored.maps) == 24
    assert verify_sequence(restored).verdict


@pytest.mark.unit_test
def test_wrong_label_rejected(group_context, z6, z6_pair):
    grid = build_sequence_pointed(group_context, z6, z6_pair)
    maps = dict(grid.maps)
    maps[((1, 1), 0, "f")] = maps.pop(((1, 1), 0, "p"))
    with pytest.raises(ValueError):
        NSequence(group_context, 2, "pointed", grid.objects, maps)
