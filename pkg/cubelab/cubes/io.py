import jsonschema
from jsonschema.exceptions import best_match

from cubelab.environment.constants import (
    CONTEXT, OBJECT, RELATIONS, KIND, CONTEXT_KINDS, FINSET, GROUP,
)
from cubelab.environment.instance import Instance
from cubelab.environment.utils import YAMLParser, build_lookup
from cubelab.models.relations.finset import FinSet
from cubelab.models.relations.eqrel import EqRel
from cubelab.models.groups.group import group_from_json
from cubelab.models.groups.catalog import by_name
from cubelab.models.groups.normal import NormalSubgroup, normal_closure
from cubelab.models.abelian.fgab import FgAbGroup
from cubelab.models.abelian.lattice import IntLattice, symbolic_lattice
from cubelab.cubes.contexts import make_context
from cubelab.cubes.cube import NCube
from cubelab.cubes.nfold import nfold_from_json
from cubelab.cubes.sequence import NSequence

_INDEX = {"type": "integer", "minimum": 0}

RELATION_SCHEMA = {
    "type": "object",
    "properties": {
        "blocks": {"type": "array", "items": {"type": "array", "items": _INDEX, "minItems": 1}},
        "elements": {"type": "array", "items": _INDEX, "minItems": 1},
        "generators": {"type": "array", "items": {"anyOf": [
            {"type": "integer"},
            {"type": "array", "items": {"type": "integer"}},
        ]}},
        "symbolic": {"type": "array", "items": {"type": ["string", "integer"]}},
    },
    "anyOf": [
        {"required": ["blocks"]},
        {"required": ["elements"]},
        {"required": ["generators"]},
        {"required": ["symbolic"]},
    ],
}

INSTANCE_SCHEMA = {
    "type": "object",
    "required": [CONTEXT, OBJECT, RELATIONS],
    "properties": {
        CONTEXT: {"enum": list(CONTEXT_KINDS)},
        "name": {"type": "string"},
        OBJECT: {"type": "object"},
        RELATIONS: {"type": "array", "items": RELATION_SCHEMA, "minItems": 1},
    },
}

CUBE_SCHEMA = {
    "type": "object",
    "required": [KIND, CONTEXT, "dimension", "vertices", "edges"],
    "properties": {
        KIND: {"const": "cube"},
        CONTEXT: {"enum": list(CONTEXT_KINDS)},
        "dimension": {"type": "integer", "minimum": 0},
        "vertices": {"type": "object", "propertyNames": {"pattern": "^[01]*$"}},
        "edges": {"type": "array", "items": {
            "type": "object",
            "required": ["from", "direction", "map"],
            "properties": {"from": {"type": "string", "pattern": "^[01]*$"}, "direction": _INDEX},
        }},
    },
}

GRID_SCHEMA = {
    "type": "object",
    "required": [KIND, CONTEXT, "mode", "dimension", "objects", "maps"],
    "properties": {
        KIND: {"const": "grid"},
        CONTEXT: {"enum": list(CONTEXT_KINDS)},
        "mode": {"enum": ["pointed", "fork"]},
        "dimension": {"type": "integer", "minimum": 0},
        "objects": {"type": "object", "propertyNames": {"pattern": "^[012]*$"}},
        "maps": {"type": "array", "items": {
            "type": "object",
            "required": ["from", "direction", "label", "map"],
            "properties": {"from": {"type": "string", "pattern": "^[012]*$"}, "direction": _INDEX,
                           "label": {"enum": ["m", "p", "d", "c", "e", "f"]}},
        }},
    },
}

NFOLD_SCHEMA = {
    "type": "object",
    "required": [KIND, "dimension", "tuples"],
    "properties": {
        KIND: {"const": "nfold"},
        "dimension": {"type": "integer", "minimum": 0},
        "tuples": {"type": "array", "items": {"type": "array", "items": _INDEX}},
    },
}

_POSITIVE = {"type": "integer", "minimum": 1}

SEARCH_SCHEMA = {
    "type": "object",
    "required": ["space", "n", "predicate"],
    "properties": {
        "space": {"enum": ["group", "cyclic", "zlattice", "cases"]},
        "n": _POSITIVE,
        "predicate": {},
        "max_order": _POSITIVE,
        "max_modulus": _POSITIVE,
        "rank": _POSITIVE,
        "bound": _POSITIVE,
        "generators": _POSITIVE,
        "seed": _INDEX,
        "max_witnesses": _POSITIVE,
        "budget": {
            "type": "object",
            "properties": {"instances": _POSITIVE, "seconds": {"type": "number", "exclusiveMinimum": 0}},
        },
        "cases": {"type": "array", "items": INSTANCE_SCHEMA, "minItems": 1},
    },
}


def _pointer(path):
    return "$" + "".join("[{}]".format(p) if isinstance(p, int) else ".{}".format(p) for p in path)


def validate(document, schema, what="document"):
    """
    Validates against a JSON schema.

    Raises
    ------
    ValueError
        With the JSON path of the offending node.
    """
    error = best_match(jsonschema.Draft7Validator(schema).iter_errors(document))
    if error is not None:
        raise ValueError("Invalid {} at {}: {}".format(what, _pointer(error.absolute_path), error.message))
    return document


def load_document(path):
    return YAMLParser(path, lookup=build_lookup()).parse()


# --------------------- Instances ------------------------


def parse_object(kind, data):
    if kind == FINSET:
        return FinSet.from_json(data)
    if kind == GROUP:
        if "catalog" in data:
            return by_name(data["catalog"])
        return group_from_json(data)
    if "invariants" in data:
        return FgAbGroup.from_invariants(data["invariants"])
    if "presentation" in data:
        return FgAbGroup.from_json(data)
    if "rank" in data:
        return FgAbGroup.free(int(data["rank"]))
    raise ValueError("Abelian objects need 'rank', 'invariants' or 'presentation', got {}".format(sorted(data)))


def parse_relation(kind, X, data):
    if kind == FINSET:
        if "blocks" not in data:
            raise ValueError("Set relations are given by 'blocks', got {}".format(sorted(data)))
        return EqRel(X, data["blocks"])
    if kind == GROUP:
        if "blocks" in data:
            return EqRel(X.carrier, data["blocks"])
        if "elements" in data:
            return NormalSubgroup(X, data["elements"])
        if "generators" in data:
            return normal_closure(X, [int(g) for g in data["generators"]])
        raise ValueError("Group relations are given by 'blocks', 'elements' or 'generators', got {}".format(sorted(data)))
    if "symbolic" in data:
        if X.rank != 2:
            raise ValueError("Symbolic generators live in Z^2, the object has {} generators".format(X.rank))
        return symbolic_lattice(*data["symbolic"])
    if "generators" in data:
        generators = [g if isinstance(g, list) else [g] for g in data["generators"]]
        for g in generators:
            if len(g) != X.rank:
                raise ValueError("Generator {} does not lie in Z^{}".format(g, X.rank))
        return IntLattice(X.rank, generators)
    raise ValueError("Abelian relations are given by 'generators' or 'symbolic', got {}".format(sorted(data)))


def instance_from_dict(data, n_override=None):
    validate(data, INSTANCE_SCHEMA, what="instance")
    kind = data[CONTEXT]
    context = make_context(kind)
    X = parse_object(kind, data[OBJECT])
    relations = [parse_relation(kind, X, r) for r in data[RELATIONS]]
    if n_override is not None:
        if not 1 <= n_override <= len(relations):
            raise ValueError("--n-override {} out of range for {} relations".format(n_override, len(relations)))
        relations = relations[:n_override]
    return Instance(context, X, relations, name=data.get("name"))


def load_instance(path, n_override=None):
    return instance_from_dict(load_document(path), n_override=n_override)


# --------------------- Artifacts ------------------------


def cube_from_dict(data):
    validate(data, CUBE_SCHEMA, what="cube")
    return NCube.from_json(data)


def grid_from_dict(data):
    validate(data, GRID_SCHEMA, what="grid")
    return NSequence.from_json(data)


def nfold_from_dict(data):
    validate(data, NFOLD_SCHEMA, what="n-fold relation")
    return nfold_from_json(data)


def load_artifact(path, n_override=None):
    """A cube, a grid, an n-fold relation or an instance, told apart by the document's kind."""
    data = load_document(path)
    if not isinstance(data, dict):
        raise ValueError("Expected a mapping at the top level of {}".format(path))
    kind = data.get(KIND)
    if kind == "cube":
        return cube_from_dict(data)
    if kind == "grid":
        return grid_from_dict(data)
    if kind == "nfold":
        return nfold_from_dict(data)
    return instance_from_dict(data, n_override=n_override)


def load_search_spec(path, overrides=None):
    from cubelab.oracle.search import SearchSpec

    data = load_document(path)
    validate(data, SEARCH_SCHEMA, what="search spec")
    return SearchSpec.from_dict(data, overrides=overrides)
