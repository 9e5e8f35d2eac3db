import functools
import itertools

import pytest

from cubelab.cubes.contexts import RelationLattice, SubgroupLattice, NormalSubgroupLattice, lattice_for
from cubelab.cubes.distributivity import (
    DistributivityFamily, enumerate_families, evaluate_family, check_distributive, failing_families,
)
from cubelab.models.abelian.lattice import IntLattice, symbolic_lattice
from cubelab.models.groups.catalog import by_name
from cubelab.models.relations.eqrel import EqRel, meet_rel
from tests.conftest import catalog_names, congruence_tuples


@pytest.mark.unit_test
@pytest.mark.parametrize("n, count", [(1, 0), (2, 2), (3, 15)])
def test_family_counts(n, count):
    families = list(enumerate_families(n))
    assert len(families) == count
    assert len(set(families)) == count


@pytest.mark.unit_test
def test_family_order():
    families = [f.to_json()["J"] for f in enumerate_families(3)]
    assert families[:2] == [[[0], [1]], [[1], [0]]]
    assert families[-3:] == [[[0], [1], [2]], [[1], [0], [2]], [[2], [0], [1]]]


@pytest.mark.unit_test
@pytest.mark.parametrize("blocks", [[[0]], [[0], [0, 1]], [[0], []]])
def test_invalid_families(blocks):
    with pytest.raises(ValueError):
        DistributivityFamily(blocks)


@pytest.mark.unit_test
def test_family_accessors():
    family = DistributivityFamily([[3], [2, 1], [0]])
    assert family.head == (3,)
    assert family.tail == ((1, 2), (0,))
    assert family.support == (0, 1, 2, 3)


@pytest.mark.unit_test
def test_lattice_for():
    assert isinstance(lattice_for(EqRel.discrete(2)), RelationLattice)
    assert isinstance(lattice_for(IntLattice.zero(2)), SubgroupLattice)
    with pytest.raises(ValueError):
        lattice_for("R")


@pytest.mark.unit_test
def test_v4_triple_is_not_distributive(v4_triple):
    report = check_distributive(v4_triple)
    assert not report.verdict
    assert report.witness == {"family": [[0], [1], [2]], "left": {"elements": [0, 1]}, "right": {"elements": [0]}}
    assert failing_families(report) == [[[0], [1], [2]], [[1], [0], [2]], [[2], [0], [1]]]
    assert len(report.trace) == 15


@pytest.mark.unit_test
def test_v4_pairs_are_distributive(v4_triple):
    assert check_distributive(v4_triple[:2], NormalSubgroupLattice())
    assert check_distributive(v4_triple[:1])


@pytest.mark.unit_test
def test_cyclic_triple_is_distributive(z12_triple):
    report = check_distributive(z12_triple)
    assert report.verdict
    assert report.witness is None
    assert all(entry["holds"] for entry in report.trace)


@pytest.mark.unit_test
def test_partition_diamond_is_not_distributive():
    relations = [EqRel(3, [[0, 1], [2]]), EqRel(3, [[0, 2], [1]]), EqRel(3, [[1, 2], [0]])]
    report = check_distributive(relations)
    assert not report.verdict
    assert report.witness["family"] == [[0], [1], [2]]
    assert report.witness["right"] == EqRel.discrete(3).to_json()


@pytest.mark.unit_test
def test_complexes_triple_is_not_distributive():
    relations = [symbolic_lattice("1"), symbolic_lattice("a"), symbolic_lattice("a^2")]
    report = check_distributive(relations)
    assert not report.verdict
    assert report.witness["family"] == [[0], [1], [2]]


@pytest.mark.unit_test
def test_complexes_with_a_doubled_generator():
    relations = [symbolic_lattice("1"), symbolic_lattice("2a"), symbolic_lattice("a^2")]
    left, right = evaluate_family(relations, DistributivityFamily([[0], [1], [2]]), SubgroupLattice())
    assert left == symbolic_lattice("2")
    assert right == IntLattice.zero(2)
    assert not check_distributive(relations).verdict


@pytest.mark.unit_test
def test_complexes_quadruple(complexes_quadruple):
    report = check_distributive(complexes_quadruple)
    assert not report.verdict
    assert [[3], [0], [1, 2]] in failing_families(report)
    left, right = evaluate_family(complexes_quadruple, DistributivityFamily([[3], [1, 2], [0]]), SubgroupLattice())
    assert left == symbolic_lattice("6a^2")
    assert right == IntLattice.zero(2)


def disjoint_meets(relations):
    """Every tuple of meets over at least two pairwise disjoint nonempty index sets."""
    seen = set()
    for family in enumerate_families(len(relations)):
        blocks = tuple(sorted(family.blocks))
        if blocks in seen:
            continue
        seen.add(blocks)
        yield [functools.reduce(meet_rel, [relations[j] for j in block]) for block in blocks]


@pytest.mark.system_test
@pytest.mark.parametrize("name", catalog_names(12))
def test_distributivity_is_hereditary(name):
    for n in (3, 4):
        for relations in congruence_tuples(by_name(name), n):
            if not check_distributive(relations).verdict:
                continue
            for k in range(2, n):
                for indices in itertools.combinations(range(n), k):
                    assert check_distributive([relations[i] for i in indices]).verdict, (relations, indices)
            for meets in disjoint_meets(relations):
                assert check_distributive(meets).verdict, relations


@pytest.mark.unit_test
def test_disjoint_meets_of_a_triple():
    R = [EqRel(4, [[0, 1], [2, 3]]), EqRel(4, [[0, 2], [1, 3]]), EqRel(4, [[0, 3], [1, 2]])]
    tuples = list(disjoint_meets(R))
    # three pairs, three singleton-and-pair splits and the full split
    assert len(tuples) == 7
    assert [EqRel.discrete(4), R[2]] in tuples
