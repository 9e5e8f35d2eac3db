import jsonlines
import numpy as np
import pytest

from cubelab.cubes.cube import build_cube
from cubelab.cubes.io import load_search_spec
from cubelab.environment.instance import Instance
from cubelab.models.abelian.lattice import IntLattice
from cubelab.models.relations.eqrel import EqRel
from cubelab.models.relations.finset import FinSet
from cubelab.oracle.brute import brute_extension_failure, brute_extension_oracle
from cubelab.oracle.predicates import (
    Distributive, NonDistributive, SubtuplesDistributiveOnly, RegularEpiNotExtension, make_predicate,
)
from cubelab.oracle.search import SearchSpec, SEARCH_LOG, search
from cubelab.oracle.spaces import GroupSpace, CyclicSpace, ZLatticeSpace
from tests.conftest import config_path


@pytest.mark.unit_test
def test_brute_oracle_on_v4(group_context, v4, v4_triple):
    failure = brute_extension_failure(build_cube(group_context, v4, v4_triple))
    assert failure["face"] == {"vertex": "111", "directions": [0, 1, 2]}
    assert failure["limit_size"] == 8


@pytest.mark.unit_test
def test_brute_oracle_on_cyclic_triple(group_context, z12, z12_triple):
    assert brute_extension_oracle(build_cube(group_context, z12, z12_triple))


@pytest.mark.unit_test
def test_brute_oracle_finds_non_permuting_pairs(set_context):
    cube = build_cube(set_context, FinSet(3), [EqRel(3, [[0, 1], [2]]), EqRel(3, [[0], [1, 2]])])
    failure = brute_extension_failure(cube)
    assert failure["face"] == {"vertex": "11", "directions": [0, 1]}
    assert failure["unreached"] == [1, 0]


@pytest.mark.unit_test
def test_brute_oracle_limits(abelian_context, plane, set_context):
    with pytest.raises(ValueError):
        brute_extension_failure(build_cube(abelian_context, plane, [IntLattice(2, [[1, 0]])]))
    with pytest.raises(ValueError):
        brute_extension_failure(build_cube(set_context, FinSet(2), [EqRel.discrete(2)] * 4))


@pytest.mark.unit_test
def test_predicates_on_v4(group_context, v4, v4_triple):
    instance = Instance(group_context, v4, v4_triple)
    assert not Distributive().process(instance).verdict
    matched = NonDistributive().process(instance)
    assert matched.verdict
    assert matched.witness["family"] == [[0], [1], [2]]
    assert SubtuplesDistributiveOnly().process(instance).verdict
    assert RegularEpiNotExtension().process(instance).verdict


@pytest.mark.unit_test
def test_predicates_on_cyclic_triple(group_context, z12, z12_triple):
    instance = Instance(group_context, z12, z12_triple)
    assert Distributive().process(instance).verdict
    report = RegularEpiNotExtension().process(instance)
    assert not report.verdict
    assert report.witness == {"reason": "regular_epi_not_extension does not hold"}


@pytest.mark.unit_test
def test_make_predicate():
    assert isinstance(make_predicate("non_distributive"), NonDistributive)
    assert isinstance(make_predicate(Distributive), Distributive)
    with pytest.raises(ValueError):
        make_predicate("interesting")


@pytest.mark.unit_test
def test_spaces():
    rng = np.random.default_rng(0)
    names = [instance.name for instance in CyclicSpace(2, max_modulus=4).instances(rng)]
    assert names[:4] == ["Z1:[1, 1]", "Z2:[1, 1]", "Z2:[1, 2]", "Z2:[2, 2]"]
    assert all(G.n == 3 for G in GroupSpace(3, max_order=2).instances(rng))
    assert not ZLatticeSpace.exhaustive
    with pytest.raises(ValueError):
        GroupSpace(0)


@pytest.mark.unit_test
@pytest.mark.parametrize("kwargs", [
    {"space": "moon", "n": 3, "predicate": "distributive"},
    {"space": "group", "n": 3, "predicate": "interesting"},
    {"space": "group", "n": 0, "predicate": "distributive"},
    {"space": "cyclic", "n": 2, "predicate": "distributive", "max_modulus": 0},
    {"space": "cases", "n": 2, "predicate": "distributive"},
])
def test_invalid_search_specs(kwargs):
    with pytest.raises(ValueError):
        SearchSpec(**kwargs)


@pytest.mark.unit_test
def test_spec_overrides():
    spec = SearchSpec.from_dict({"space": "zlattice", "n": 2, "predicate": "distributive", "budget": {"instances": 5}},
                                overrides={"seed": 7})
    assert spec.seed == 7
    assert spec.budget == {"instances": 5, "seconds": None}
    assert spec.to_json()["predicate"] == "distributive"


@pytest.mark.integration_test
def test_first_non_distributive_group_is_v4(tmp_path):
    spec = load_search_spec(config_path("search", "v4_non_distributive.yaml"))
    witnesses = search(spec, log_dir=str(tmp_path))
    assert len(witnesses) == 1
    assert witnesses[0]["instance"]["name"] == "V4:[1, 2, 3]"
    assert witnesses[0]["report"]["witness"]["family"] == [[0], [1], [2]]
    with jsonlines.open(str(tmp_path / SEARCH_LOG)) as reader:
        lines = list(reader)
    assert sum(line["matched"] for line in lines) == 1
    assert lines[-1]["instance"]["name"] == "V4:[1, 2, 3]"


@pytest.mark.integration_test
def test_cyclic_tuples_are_distributive():
    spec = load_search_spec(config_path("search", "cyclic_distributive.yaml"))
    witnesses = search(spec)
    assert len(witnesses) == len(list(spec.make_space().instances(np.random.default_rng(spec.seed))))
    assert witnesses[0]["instance"]["name"] == "Z1:[1, 1, 1]"


@pytest.mark.integration_test
def test_random_search_is_deterministic():
    spec = SearchSpec("zlattice", 3, "non_distributive", seed=3, budget={"instances": 20})
    assert search(spec) == search(spec)
    drawn = [i.to_json() for i in spec.make_space().instances(np.random.default_rng(3))]
    assert len(drawn) == 20
    assert drawn == [i.to_json() for i in spec.make_space().instances(np.random.default_rng(3))]


@pytest.mark.integration_test
def test_case_search():
    spec = load_search_spec(config_path("search", "complexes_cases.yaml"))
    witnesses = search(spec)
    assert [w["instance"]["name"] for w in witnesses] == ["complexes_triple", "complexes_quadruple"]
