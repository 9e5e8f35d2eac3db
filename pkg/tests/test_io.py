import pytest

from cubelab.cubes.cube import NCube, build_cube
from cubelab.cubes.io import (
    load_instance, load_artifact, load_search_spec, instance_from_dict, validate, INSTANCE_SCHEMA,
)
from cubelab.cubes.nfold import NFoldEqRel, box2, is_parallelistic
from cubelab.cubes.sequence import NSequence, build_sequence_pointed
from cubelab.environment.utils import write_json
from cubelab.models.abelian.lattice import symbolic_lattice
from cubelab.models.relations.eqrel import EqRel
from cubelab.oracle.predicates import NonDistributive
from tests.conftest import config_path


def write(path, text):
    path.write_text(text)
    return str(path)


@pytest.mark.unit_test
def test_load_group_instance():
    instance = load_instance(config_path("instances", "v4_triple.yaml"))
    assert instance.name == "v4_triple"
    assert instance.context.kind == "group"
    assert instance.n == 3
    normals = [instance.context.as_normal(instance.base, R) for R in instance.relations]
    assert [N.elements for N in normals] == [(0, 1), (0, 2), (0, 3)]


@pytest.mark.unit_test
def test_load_abelian_instances():
    instance = load_instance(config_path("instances", "z6_abelian_pair.yaml"))
    assert instance.base.order() == 6
    complexes = load_instance(config_path("instances", "complexes_triple.yaml"))
    assert complexes.relations[2] == symbolic_lattice("a^2")


@pytest.mark.unit_test
def test_load_set_instance():
    instance = load_instance(config_path("instances", "finset_pair.yaml"))
    assert instance.relations[0] == EqRel(4, [[0, 1], [2, 3]])


@pytest.mark.unit_test
def test_n_override():
    assert load_instance(config_path("instances", "v4_triple.yaml"), n_override=2).n == 2
    for n in (0, 4):
        with pytest.raises(ValueError, match="out of range"):
            load_instance(config_path("instances", "v4_triple.yaml"), n_override=n)


@pytest.mark.unit_test
def test_schema_errors_carry_a_path():
    with pytest.raises(ValueError, match="Invalid instance"):
        instance_from_dict({"context": "group", "object": {"catalog": "V4"}})
    with pytest.raises(ValueError, match=r"\$\.relations"):
        instance_from_dict({"context": "finset", "object": {"size": 2}, "relations": []})
    with pytest.raises(ValueError, match=r"\$\.context"):
        validate({"context": "ring", "object": {}, "relations": [{"blocks": [[0]]}]}, INSTANCE_SCHEMA, "instance")


@pytest.mark.unit_test
@pytest.mark.parametrize("data", [
    {"context": "abelian", "object": {"rank": 2}, "relations": [{"generators": [[1, 2, 3]]}]},
    {"context": "abelian", "object": {"rank": 1}, "relations": [{"symbolic": ["a"]}]},
    {"context": "abelian", "object": {"order": 4}, "relations": [{"generators": [1]}]},
    {"context": "finset", "object": {"size": 3}, "relations": [{"elements": [0]}]},
    {"context": "group", "object": {"catalog": "V4"}, "relations": [{"symbolic": ["a"]}]},
])
def test_malformed_relations(data):
    with pytest.raises(ValueError):
        instance_from_dict(data)


@pytest.mark.unit_test
def test_file_include(tmp_path):
    write(tmp_path / "relations.yaml", "- {blocks: [[0, 1], [2]]}\n- {blocks: [[0], [1, 2]]}\n")
    path = write(tmp_path / "instance.yaml",
                 'context: finset\nobject: {size: 3}\nrelations: "!file:relations.yaml"\n')
    instance = load_instance(path)
    assert instance.n == 2
    assert instance.relations[1] == EqRel(3, [[0], [1, 2]])


@pytest.mark.unit_test
def test_bad_documents(tmp_path):
    with pytest.raises(ValueError, match="Unknown command"):
        load_instance(write(tmp_path / "a.yaml", 'context: "!include:x.yaml"\n'))
    with pytest.raises(ValueError, match="Empty document"):
        load_instance(write(tmp_path / "b.yaml", ""))
    with pytest.raises(ValueError, match="top level"):
        load_artifact(write(tmp_path / "c.yaml", "- 1\n- 2\n"))


@pytest.mark.unit_test
def test_artifacts_are_told_apart(tmp_path, group_context, z6, z6_pair):
    cube_path = str(tmp_path / "cube.json")
    write_json(build_cube(group_context, z6, z6_pair).to_json(), cube_path)
    assert isinstance(load_artifact(cube_path), NCube)

    grid_path = str(tmp_path / "grid.json")
    write_json(build_sequence_pointed(group_context, z6, z6_pair).to_json(), grid_path)
    assert isinstance(load_artifact(grid_path), NSequence)

    assert load_artifact(config_path("instances", "z6_pair.yaml")).name == "z6_pair"


@pytest.mark.unit_test
def test_nfold_artifacts(tmp_path):
    mod_two = EqRel(4, [[0, 2], [1, 3]])
    path = str(tmp_path / "box.json")
    write_json(box2(mod_two, mod_two).to_json(), path)
    loaded = load_artifact(path)
    assert isinstance(loaded, NFoldEqRel)
    assert loaded == box2(mod_two, mod_two)
    assert loaded.size() == 32
    assert is_parallelistic(loaded).verdict

    odd = write(tmp_path / "odd.yaml", "kind: nfold\ndimension: 1\ntuples: [[0, 1], [1, 0]]\n")
    assert not is_parallelistic(load_artifact(odd)).verdict
    with pytest.raises(ValueError, match="Invalid n-fold relation"):
        load_artifact(write(tmp_path / "bad.yaml", "kind: nfold\ndimension: 1\n"))


@pytest.mark.unit_test
def test_search_specs():
    spec = load_search_spec(config_path("search", "zlattice_subtuples.yaml"), overrides={"seed": 5})
    assert spec.seed == 5
    assert spec.budget["instances"] == 500
    cases = load_search_spec(config_path("search", "complexes_cases.yaml"))
    assert [case["name"] for case in cases.cases] == ["complexes_triple", "complexes_quadruple"]


@pytest.mark.unit_test
def test_search_spec_names_a_predicate_class(tmp_path):
    path = write(tmp_path / "spec.yaml",
                 "space: group\nn: 3\nmax_order: 4\npredicate: cubelab.oracle.predicates.NonDistributive\n")
    spec = load_search_spec(path)
    assert spec.predicate is NonDistributive
    assert spec.to_json()["predicate"] == "NonDistributive"


@pytest.mark.unit_test
def test_invalid_search_spec(tmp_path):
    path = write(tmp_path / "spec.yaml", "space: group\nn: 0\npredicate: distributive\n")
    with pytest.raises(ValueError, match=r"Invalid search spec at \$\.n"):
        load_search_spec(path)
