import itertools

from cubelab.environment.constants import POINTED, FORK, MAX_CUBE_DIMENSION, TUPLE_MATERIALIZATION_LIMIT
from cubelab.environment.report import CheckReport
from cubelab.cubes.contexts import make_context
from cubelab.cubes.cube import build_cube

MONO = "m"
EPI = "p"
SOURCE = "d"
TARGET = "c"
REFLEXIVITY = "e"
ARROW = "f"

# coordinate a map of each label leaves from, and the one it lands on
LABEL_STEPS = {
    MONO: (2, 1),
    EPI: (1, 0),
    SOURCE: (2, 1),
    TARGET: (2, 1),
    REFLEXIVITY: (1, 2),
    ARROW: (1, 0),
}
MODE_LABELS = {
    POINTED: (MONO, EPI),
    FORK: (SOURCE, TARGET, REFLEXIVITY, ARROW),
}


def positions(n):
    return list(itertools.product((0, 1, 2), repeat=n))


def key(position):
    return "".join(str(c) for c in position)


def parse_key(text):
    if any(c not in "012" for c in text):
        raise ValueError("Invalid grid key '{}'".format(text))
    return tuple(int(c) for c in text)


def line_key(position, direction):
    return "".join("*" if j == direction else str(c) for j, c in enumerate(position))


def step(position, direction, label):
    source, target = LABEL_STEPS[label]
    if position[direction] != source:
        raise ValueError("A '{}' map cannot leave coordinate {} in direction {}"
                         .format(label, position[direction], direction))
    return position[:direction] + (target,) + position[direction + 1:]


class NSequence:
    """
    A diagram on the grid {0,1,2}^n.

    Coordinate 1 is the middle of every line; 2 is the kernel side and 0 the quotient side, so the given object sits
    at (1,...,1). In pointed mode each line is K --m--> Y --p--> Q; in fork mode each line is a reflexive graph
    d, c: R -> Y, e: Y -> R together with f: Y -> Q.

    Parameters
    ----------
    context : Context
    dimension : int
    mode : str
        "pointed" or "fork"
    objects : dict
        position tuple -> object
    maps : dict
        (source position, direction, label) -> map
    """

    def __init__(self, context, dimension, mode, objects, maps):
        if mode not in MODE_LABELS:
            raise ValueError("Invalid grid mode {}, expected one of {}".format(mode, sorted(MODE_LABELS)))
        if not 0 <= dimension <= MAX_CUBE_DIMENSION:
            raise ValueError("Grid dimension must lie in [0, {}], got {}".format(MAX_CUBE_DIMENSION, dimension))
        if mode == POINTED and not context.pointed:
            raise ValueError("Pointed grids need a pointed context, got {}".format(context.kind))
        for position in positions(dimension):
            if position not in objects:
                raise ValueError("Grid has no object at {}".format(key(position)))
        for (position, direction, label) in maps:
            if label not in MODE_LABELS[mode]:
                raise ValueError("Map label '{}' does not belong to a {} grid".format(label, mode))
            step(position, direction, label)
        self.context = context
        self.dimension = dimension
        self.mode = mode
        self.objects = dict(objects)
        self.maps = dict(maps)

    def __repr__(self):
        return "NSequence(dimension={}, mode={}, context={})".format(self.dimension, self.mode, self.context.kind)

    def object(self, position):
        return self.objects[tuple(position)]

    def map(self, position, direction, label):
        try:
            return self.maps[(tuple(position), direction, label)]
        except KeyError:
            raise ValueError("Grid has no '{}' map from {} in direction {}".format(label, key(position), direction))

    def lines(self):
        """Yields (direction, position of the middle object) for every axis-parallel line."""
        for direction in range(self.dimension):
            for position in positions(self.dimension):
                if position[direction] == 1:
                    yield direction, position

    def edge_list(self):
        return sorted((key(p), i, label, key(step(p, i, label))) for (p, i, label) in self.maps)

    def to_json(self):
        ctx = self.context
        if self.mode == POINTED:
            describe, map_json = ctx.pointed_describe, ctx.pointed_map_json
        else:
            describe, map_json = ctx.describe, ctx.map_json
        return {
            "kind": "grid",
            "context": ctx.kind,
            "mode": self.mode,
            "dimension": self.dimension,
            "objects": {key(p): describe(obj) for p, obj in self.objects.items()},
            "maps": [{"from": key(p), "direction": i, "label": label, "map": map_json(f)}
                     for (p, i, label), f in sorted(self.maps.items())],
        }

    @classmethod
    def from_json(cls, data):
        ctx = make_context(data["context"])
        mode = data["mode"]
        if mode == POINTED:
            objects = {parse_key(k): ctx.pointed_object_from_json(v) for k, v in data["objects"].items()}
        else:
            objects = {parse_key(k): ctx.object_from_json(v) for k, v in data["objects"].items()}
        maps = {}
        for entry in data["maps"]:
            position, direction, label = parse_key(entry["from"]), int(entry["direction"]), entry["label"]
            if mode == POINTED:
                target = step(position, direction, label)
                f = ctx.pointed_map_from_json(entry["map"], objects[position], objects[target])
            else:
                f = ctx.map_from_json(entry["map"])
            maps[(position, direction, label)] = f
        return cls(ctx, int(data["dimension"]), mode, objects, maps)


# --------------------- Pointed grids ------------------------


def _pointed_setup(context, X, normals):
    if not context.pointed:
        raise ValueError("Pointed grids need a pointed context, got {}".format(context.kind))
    normals = [context.as_normal(X, K) for K in normals]
    if len(normals) > MAX_CUBE_DIMENSION:
        raise ValueError("Grid dimension {} exceeds the supported maximum {}".format(len(normals), MAX_CUBE_DIMENSION))
    return normals, context.normal_lattice


def _pointed_grid(context, X, n, subquotients):
    objects = {p: context.subquotient_object(sq) for p, sq in subquotients.items()}
    maps = {}
    for p, sq in subquotients.items():
        for i in range(n):
            for label in (MONO, EPI):
                if p[i] == LABEL_STEPS[label][0]:
                    maps[(p, i, label)] = sq.induced_map(subquotients[step(p, i, label)])
    grid = NSequence(context, n, POINTED, objects, maps)
    grid.subquotients = subquotients
    return grid


def build_sequence_pointed(context, X, normals):
    """
    The pointed grid obtained by first intersecting and then taking cokernels.

    Position e carries M/D with M = ⋀_{e_i = 2} K_i (X when empty) and D = ⋁_{e_i = 0} (M ∧ K_i) (trivial when
    empty). Maps are induced by inclusion and projection.
    """
    normals, lattice = _pointed_setup(context, X, normals)
    n = len(normals)
    subquotients = {}
    for p in positions(n):
        kept = [normals[i] for i in range(n) if p[i] == 2]
        M = lattice.meet_all(kept) if kept else context.normal_top(X)
        quotiented = [lattice.meet(M, normals[i]) for i in range(n) if p[i] == 0]
        D = lattice.join_all(quotiented) if quotiented else context.normal_bottom(X)
        subquotients[p] = context.subquotient(X, M, D)
    return _pointed_grid(context, X, n, subquotients)


def build_sequence_kernels(context, X, normals):
    """
    The pointed grid obtained from the induced cube by taking kernels in every direction.

    Position e carries M/D with D = ⋁_{e_i = 0} K_i and M = ⋀_{e_i = 2} (K_i ∨ D): the kernel, inside X/D, of the
    quotient maps in the directions marked 2.
    """
    normals, lattice = _pointed_setup(context, X, normals)
    n = len(normals)
    subquotients = {}
    for p in positions(n):
        quotiented = [normals[i] for i in range(n) if p[i] == 0]
        D = lattice.join_all(quotiented) if quotiented else context.normal_bottom(X)
        kept = [lattice.join(normals[i], D) for i in range(n) if p[i] == 2]
        M = lattice.meet_all(kept) if kept else context.normal_top(X)
        subquotients[p] = context.subquotient(X, M, D)
    return _pointed_grid(context, X, n, subquotients)


# --------------------- Fork grids ------------------------


def build_fork_diagram(context, X, relations, limit=TUPLE_MATERIALIZATION_LIMIT):
    """
    The denormalised grid of iterated kernel-pair forks over the induced cube.

    Direction k is extended by replacing every arrow f: Y -> Q in direction k by its kernel pair R with projections
    d, c and diagonal e; maps in the other directions extend to R componentwise.
    """
    cube = build_cube(context, X, relations)
    n = cube.dimension
    bound = context.box_size_bound(X, cube.relations)
    if bound is not None and bound > limit:
        raise ValueError("Fork grid over {} relations may hold {} tuples, above the limit {}".format(n, bound, limit))
    objects = {v: obj for v, obj in cube.objects.items()}
    maps = {(v, i, ARROW): f for (v, i), f in cube.edges.items()}
    for k in range(n):
        middles = [p for p in objects if p[k] == 1]
        legs = {}
        for p in middles:
            f = maps[(p, k, ARROW)]
            P, p1, p2 = context.pullback(f, f)
            top = p[:k] + (2,) + p[k + 1:]
            objects[top] = P
            legs[p] = (p1, p2)
            identity = context.identity(objects[p])
            maps[(top, k, SOURCE)] = p1
            maps[(top, k, TARGET)] = p2
            maps[(p, k, REFLEXIVITY)] = context.pair(p1, p2, identity, identity)
        for (p, j, label), g in list(maps.items()):
            if j == k or p[k] != 1:
                continue
            target = step(p, j, label)
            (p1, p2), (q1, q2) = legs[p], legs[target]
            top = p[:k] + (2,) + p[k + 1:]
            maps[(top, j, label)] = context.pair(q1, q2, context.compose(g, p1), context.compose(g, p2))
    return NSequence(context, n, FORK, objects, maps)


# --------------------- Verification ------------------------


def _pointed_line(grid, direction, middle):
    ctx = grid.context
    kernel_side = middle[:direction] + (2,) + middle[direction + 1:]
    m = grid.map(kernel_side, direction, MONO)
    p = grid.map(middle, direction, EPI)
    reasons = []
    if not ctx.is_injective(m):
        reasons.append("mono_not_injective")
    if not ctx.is_surjective(p):
        reasons.append("epi_not_surjective")
    if not ctx.image_is_kernel(m, p):
        reasons.append("image_not_kernel")
    return reasons


def _fork_line(grid, direction, middle):
    ctx = grid.context
    relation_side = middle[:direction] + (2,) + middle[direction + 1:]
    d = grid.map(relation_side, direction, SOURCE)
    c = grid.map(relation_side, direction, TARGET)
    f = grid.map(middle, direction, ARROW)
    reasons = []
    if not ctx.is_surjective(f):
        reasons.append("arrow_not_surjective")
    _, p1, p2 = ctx.pullback(f, f)
    try:
        comparison = ctx.pair(p1, p2, d, c)
    except ValueError:
        reasons.append("not_a_fork")
        return reasons
    if not ctx.is_iso(comparison):
        reasons.append("relation_not_kernel_pair")
    return reasons


def verify_sequence(grid):
    """
    Checks every axis-parallel line of the grid.

    Pointed lines must be short exact: m injective, p surjective and im m = ker p. Fork lines must be exact: f
    surjective and (d, c) the kernel pair of f.

    Returns
    -------
    CheckReport
        The witness is the first failing line and ``failing_lines`` lists all of them with their reasons.
    """
    check_line = _pointed_line if grid.mode == POINTED else _fork_line
    trace, failures = [], []
    for direction, middle in grid.lines():
        reasons = check_line(grid, direction, middle)
        entry = {"line": line_key(middle, direction), "direction": direction, "exact": not reasons}
        trace.append(entry)
        if reasons:
            failures.append({"line": line_key(middle, direction), "direction": direction, "reasons": reasons})
    if not failures:
        return CheckReport.passed(trace=trace)
    witness = dict(failures[0])
    witness["failing_lines"] = failures
    return CheckReport.failed(witness, trace=trace)


def exact_lines(grid):
    """line key -> exactness, used to colour rendered grids."""
    report = verify_sequence(grid)
    return {entry["line"]: entry["exact"] for entry in report.trace}
