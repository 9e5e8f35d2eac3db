import itertools
import os

import pytest

from cubelab.cubes.contexts import SetContext, GroupContext, AbelianContext
from cubelab.models.abelian.fgab import FgAbGroup
from cubelab.models.abelian.lattice import symbolic_lattice
from cubelab.models.groups.catalog import by_name, catalog
from cubelab.models.groups.normal import NormalSubgroup, normal_closure, enumerate_normal_subgroups, congruence_of

CONFIG_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "configs")


def config_path(*parts):
    return os.path.join(CONFIG_DIR, *parts)


def catalog_names(max_order):
    return [G.name for G in catalog(max_order)]


def congruence_tuples(G, n):
    """Every n-multiset of congruences of G, in the order of its normal subgroups."""
    congruences = [congruence_of(K) for K in enumerate_normal_subgroups(G)]
    for combo in itertools.combinations_with_replacement(congruences, n):
        yield list(combo)


@pytest.fixture
def set_context():
    return SetContext()


@pytest.fixture
def group_context():
    return GroupContext()


@pytest.fixture
def abelian_context():
    return AbelianContext()


@pytest.fixture
def v4():
    return by_name("V4")


@pytest.fixture
def v4_triple(v4):
    # the three subgroups of order 2; elements (a, b) are indexed by 2a + b
    return [NormalSubgroup(v4, [0, 1]), NormalSubgroup(v4, [0, 2]), NormalSubgroup(v4, [0, 3])]


@pytest.fixture
def z6():
    return by_name("Z6")


@pytest.fixture
def z6_pair(z6):
    return [normal_closure(z6, [2]), normal_closure(z6, [3])]


@pytest.fixture
def z12():
    return by_name("Z12")


@pytest.fixture
def z12_triple(z12):
    return [normal_closure(z12, [2]), normal_closure(z12, [3]), normal_closure(z12, [4])]


@pytest.fixture
def plane():
    return FgAbGroup.free(2)


@pytest.fixture
def complexes_quadruple():
    return [symbolic_lattice("1"), symbolic_lattice("2a"), symbolic_lattice("3a"), symbolic_lattice("a^2")]
