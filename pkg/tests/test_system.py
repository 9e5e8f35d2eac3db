import itertools

import numpy as np
import pytest

from cubelab.cubes.contexts import GroupContext, AbelianContext
from cubelab.cubes.cube import is_n_cubic_extension
from cubelab.cubes.distributivity import check_distributive
from cubelab.cubes.sequence import build_sequence_pointed, verify_sequence
from cubelab.cubes.theorems import THEOREM_CLAUSES, equivalence_theorem_check
from cubelab.models.abelian.fgab import FgAbGroup
from cubelab.models.abelian.lattice import IntLattice
from cubelab.models.groups.catalog import by_name
from cubelab.models.groups.normal import enumerate_normal_subgroups
from cubelab.oracle.brute import brute_extension_oracle
from cubelab.oracle.spaces import GroupSpace, CyclicSpace
from tests.conftest import catalog_names

# fork grids over order 16 triples can hold millions of tuples
CLAUSES_WITHOUT_FORK = [clause for clause in THEOREM_CLAUSES if clause["name"] != "fork"]


@pytest.mark.system_test
@pytest.mark.parametrize("n", [2, 3])
def test_catalog_distributivity_matches_extension(n):
    for instance in GroupSpace(n, max_order=8).instances(np.random.default_rng(0)):
        distributive = check_distributive(instance.relations, instance.context.lattice).verdict
        extension = is_n_cubic_extension(instance.cube).verdict
        assert distributive == extension, instance.name
        assert extension == brute_extension_oracle(instance.cube), instance.name


@pytest.mark.system_test
@pytest.mark.parametrize("name", catalog_names(16))
def test_characterisations_agree_on_catalog_triples(name):
    G = by_name(name)
    context = GroupContext()
    normals = enumerate_normal_subgroups(G)
    for combo in itertools.combinations_with_replacement(normals, 3):
        report = equivalence_theorem_check(context, G, list(combo), clauses=CLAUSES_WITHOUT_FORK)
        assert report.defects == [], (name, [K.elements for K in combo])
        # every clause ran: none was skipped
        assert len(report.trace) == len(CLAUSES_WITHOUT_FORK)


@pytest.mark.system_test
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_cyclic_pointed_grids_are_exact(n):
    for instance in CyclicSpace(n, max_modulus=60).instances(np.random.default_rng(0)):
        grid = build_sequence_pointed(instance.context, instance.base, instance.relations)
        assert verify_sequence(grid).verdict, instance.name


@pytest.mark.integration_test
def test_cyclic_pointed_grids_of_z60():
    context = AbelianContext()
    X = FgAbGroup.cyclic(60)
    ideals = [IntLattice(1, [[d]]) for d in (2, 3, 4, 5)]
    grid = build_sequence_pointed(context, X, ideals)
    assert grid.dimension == 4
    assert verify_sequence(grid).verdict
