import networkx as nx
from networkx.drawing.nx_pydot import to_pydot

from cubelab.cubes.cube import NCube, bits, lower
from cubelab.cubes.sequence import NSequence, key, line_key, step, exact_lines

EXACT_COLOR = "darkgreen"
INEXACT_COLOR = "red"
NEUTRAL_COLOR = "black"


def _node_label(context, name, obj):
    size = context.size(obj)
    return '"{}\\n{}"'.format(name, "inf" if size is None else "|{}|".format(size))


def cube_graph(cube):
    """
    The cube as a MultiDiGraph on its bit-string vertices.

    Edges carry their direction; edges whose map is not surjective are coloured as failures.
    """
    ctx = cube.context
    graph = nx.MultiDiGraph(name="cube")
    for v in sorted(cube.objects):
        graph.add_node(bits(v), label=_node_label(ctx, bits(v), cube.objects[v]))
    for (v, i) in sorted(cube.edges):
        color = EXACT_COLOR if ctx.is_surjective(cube.edges[(v, i)]) else INEXACT_COLOR
        graph.add_edge(bits(v), bits(lower(v, i)), key=str(i), label='"{}"'.format(i), color=color)
    return graph


def grid_graph(grid):
    """
    The grid as a MultiDiGraph on its base-3 keys.

    Every map is coloured by the exactness of the line it lies on.
    """
    ctx = grid.context
    exact = exact_lines(grid)
    graph = nx.MultiDiGraph(name=grid.mode)
    for p in sorted(grid.objects):
        graph.add_node(key(p), label=_node_label(ctx, key(p), grid.objects[p]))
    for (p, i, label) in sorted(grid.maps):
        line = line_key(p, i)
        color = NEUTRAL_COLOR if line not in exact else (EXACT_COLOR if exact[line] else INEXACT_COLOR)
        graph.add_edge(key(p), key(step(p, i, label)), key="{}{}".format(label, i),
                       label='"{}{}"'.format(label, i), color=color)
    return graph


def to_graph(artifact):
    if isinstance(artifact, NCube):
        return cube_graph(artifact)
    if isinstance(artifact, NSequence):
        return grid_graph(artifact)
    raise ValueError("Only cubes and grids can be rendered, got {}".format(type(artifact).__name__))


def to_dot(artifact):
    """DOT source for a cube or grid; equal inputs give byte-identical output."""
    return to_pydot(to_graph(artifact)).to_string()
