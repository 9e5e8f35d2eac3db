import os
import copy
import functools
import importlib
import inspect
import json
import pkgutil

import yaml
import jsonlines
import numpy as np
import cubelab

_JSON_SCALARS = (str, int, float, bool, type(None))


@functools.lru_cache(maxsize=None)
def build_lookup(pkg_name=cubelab.__name__):
    """Every class defined under the package, keyed by its dotted path, so configs can name classes."""
    pkg = importlib.import_module(pkg_name)
    lookup = {}
    for info in pkgutil.walk_packages(pkg.__path__, prefix=pkg_name + "."):
        module = importlib.import_module(info.name)
        for name, cls in inspect.getmembers(module, inspect.isclass):
            if cls.__module__ == module.__name__:
                lookup["{}.{}".format(module.__name__, name)] = cls
    return lookup


def dict_merge(dict_a, dict_b, recursive=True):
    '''
    A copy of dict_a updated with dict_b; on key collisions dict_b wins unless both values are dicts and
    ``recursive`` is set, in which case they are merged in turn.
    '''
    merged = copy.deepcopy(dict_a)
    for key, value in dict_b.items():
        if recursive and isinstance(merged.get(key), dict) and isinstance(value, dict):
            merged[key] = dict_merge(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


class YAMLParser:
    """
    Loads instance files, search specs and catalogs.

    JSON documents go through the same loader. A string value of the form ``!file:path`` is replaced by the parsed
    contents of ``path`` (relative to the including file), and a string matching a key of ``lookup`` is replaced by
    the looked up class.
    """

    COMMAND_CHAR = '!'

    def __init__(self, yaml_file, lookup=None):
        self.yaml_path = os.path.abspath(yaml_file)
        self.lookup = {} if lookup is None else lookup
        self.commands = {"file": self.file_command}

    def parse(self):
        document = self._read(self.yaml_path)
        if document is None:
            raise ValueError("Empty document: {}".format(self.yaml_path))
        return self._resolve(document, os.path.dirname(self.yaml_path))

    @staticmethod
    def _read(path):
        with open(path, 'r') as f:
            return yaml.safe_load(f)

    def _resolve(self, node, working_dir):
        if isinstance(node, dict):
            return {k: self._resolve(v, working_dir) for k, v in node.items()}
        if isinstance(node, list):
            return [self._resolve(v, working_dir) for v in node]
        if isinstance(node, str):
            return self.process_str(node, working_dir)
        return node

    def process_str(self, input_str, working_dir):
        if input_str.startswith(self.COMMAND_CHAR) and ":" in input_str:
            command, argument = input_str[1:].split(":", 1)
            if command not in self.commands:
                raise ValueError("Unknown command '{}' in {}".format(command, self.yaml_path))
            return self.commands[command](argument, working_dir)
        return self.lookup.get(input_str, input_str)

    def file_command(self, relative_path, working_dir):
        # includes resolve their own includes relative to themselves
        path = os.path.abspath(os.path.join(working_dir, relative_path))
        return self._resolve(self._read(path), os.path.dirname(path))


def log_to_jsonlines(contents, output_dir, jsonline_filename):
    """
    Appends one JSON line to ``output_dir/jsonline_filename``, creating the directory if needed.

    Parameters
    ----------
    contents : dict
        Line contents; numpy values are converted with ``jsonify``
    output_dir : str
    jsonline_filename : str
    """
    os.makedirs(output_dir, exist_ok=True)
    with jsonlines.open(os.path.join(output_dir, jsonline_filename), mode='a') as writer:
        writer.write(jsonify(contents))


def jsonify(value):
    """
    Rebuilds a nested structure from JSON types only.

    numpy arrays and scalars, tuples and sets are converted, dict keys become strings and objects exposing
    ``to_json`` are replaced by their JSON form.

    Raises
    ------
    ValueError
        For values with no JSON form.
    """
    if isinstance(value, dict):
        return {str(k): jsonify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonify(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(jsonify(v) for v in value)
    if isinstance(value, np.ndarray):
        return jsonify(value.tolist())
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, _JSON_SCALARS):
        return value
    if hasattr(value, "to_json"):
        return jsonify(value.to_json())
    raise ValueError("Value of type {} is not JSON serializable".format(type(value).__name__))


def dump_json(contents):
    # canonical form: byte-stable for equal contents
    return json.dumps(jsonify(contents), sort_keys=True, indent=2) + "\n"


def write_json(contents, path):
    with open(path, 'w') as f:
        f.write(dump_json(contents))
