import os
import functools

from cubelab.environment.constants import CATALOG_ENV_VAR
from cubelab.environment.utils import YAMLParser
from cubelab.models.groups.group import group_from_json

DEFAULT_CATALOG = os.path.join(os.path.dirname(os.path.abspath(__file__)), "catalog.yaml")


def catalog_path():
    return os.environ.get(CATALOG_ENV_VAR, DEFAULT_CATALOG)


@functools.lru_cache(maxsize=None)
def _load(path):
    document = YAMLParser(path).parse()
    entries = document["groups"] if isinstance(document, dict) else document
    groups = []
    names = set()
    for entry in entries:
        group = group_from_json(entry)
        if group.name in names:
            raise ValueError("Duplicate catalog entry {} in {}".format(group.name, path))
        names.add(group.name)
        groups.append(group)
    return tuple(groups)


def catalog(max_order=None):
    """
    The group catalog, in file order. ``CUBELAB_CATALOG`` selects an alternative catalog file.

    Parameters
    ----------
    max_order : int, optional
        Keep only groups of at most this order.
    """
    groups = _load(catalog_path())
    if max_order is None:
        return list(groups)
    return [G for G in groups if len(G) <= max_order]


def by_name(name):
    for G in _load(catalog_path()):
        if G.name == name:
            return G
    raise KeyError("No catalog group named {}".format(name))
