import itertools

from cubelab.environment.constants import MAX_CUBE_DIMENSION
from cubelab.environment.report import CheckReport
from cubelab.cubes.contexts import make_context


def vertices(n):
    return list(itertools.product((0, 1), repeat=n))


def bits(v):
    return "".join(str(b) for b in v)


def parse_bits(key):
    if any(c not in "01" for c in key):
        raise ValueError("Invalid vertex key '{}'".format(key))
    return tuple(int(c) for c in key)


def lower(v, i):
    return v[:i] + (0,) + v[i + 1:]


class NCube:
    """
    An n-fold arrow: objects on the vertices of {0,1}^n and maps on its edges.

    Vertex (1,...,1) is the initial object and (0,...,0) the terminal quotient. The edge (v, i), defined when
    v_i = 1, goes from v to v - e_i.

    Parameters
    ----------
    context : Context
    dimension : int
    objects : dict
        vertex tuple -> object
    edges : dict
        (vertex tuple, direction) -> map
    base : object, optional
        The object X a cube built from relations was induced on
    relations : list, optional
        The inducing relations, one per direction
    embedding : optional
        Embedding of the initial object into a power of the base, kept through kernel pairs
    """

    def __init__(self, context, dimension, objects, edges, base=None, relations=None, embedding=None):
        if not 0 <= dimension <= MAX_CUBE_DIMENSION:
            raise ValueError("Cube dimension must lie in [0, {}], got {}".format(MAX_CUBE_DIMENSION, dimension))
        for v in vertices(dimension):
            if v not in objects:
                raise ValueError("Cube has no object at vertex {}".format(bits(v)))
            for i in range(dimension):
                if v[i] == 1 and (v, i) not in edges:
                    raise ValueError("Cube has no edge from {} in direction {}".format(bits(v), i))
        self.context = context
        self.dimension = dimension
        self.objects = dict(objects)
        self.edges = dict(edges)
        self.base = base
        self.relations = None if relations is None else list(relations)
        self.embedding = embedding

    def __repr__(self):
        return "NCube(dimension={}, context={})".format(self.dimension, self.context.kind)

    @property
    def top(self):
        return (1,) * self.dimension

    def vertex(self, v):
        return self.objects[tuple(v)]

    def edge(self, v, i):
        return self.edges[(tuple(v), i)]

    def squares(self):
        """Yields (v, i, j) for every 2-face, with v its initial vertex."""
        for v in vertices(self.dimension):
            for i, j in itertools.combinations(range(self.dimension), 2):
                if v[i] == 1 and v[j] == 1:
                    yield v, i, j

    def square_maps(self, v, i, j):
        """(r, s, u, w): r, s leave v in directions i, j; u, w close the square."""
        return self.edge(v, i), self.edge(v, j), self.edge(lower(v, i), j), self.edge(lower(v, j), i)

    def commutes(self):
        ctx = self.context
        for v, i, j in self.squares():
            r, s, u, w = self.square_maps(v, i, j)
            if not ctx.equal_maps(ctx.compose(u, r), ctx.compose(w, s)):
                return False
        return True

    def face(self, fixed):
        """
        The subcube with the given coordinates fixed.

        Parameters
        ----------
        fixed : dict
            direction -> 0 or 1

        Returns
        -------
        NCube
            Its directions are the free ones in increasing order.
        """
        free = [i for i in range(self.dimension) if i not in fixed]

        def lift(w):
            v = [0] * self.dimension
            for d, bit in fixed.items():
                v[d] = bit
            for k, d in enumerate(free):
                v[d] = w[k]
            return tuple(v)

        objects = {w: self.objects[lift(w)] for w in vertices(len(free))}
        edges = {(w, k): self.edges[(lift(w), d)]
                 for w in vertices(len(free)) for k, d in enumerate(free) if w[k] == 1}
        at_top = all(bit == 1 for bit in fixed.values())
        relations = [self.relations[d] for d in free] if (self.relations is not None and at_top) else None
        return NCube(self.context, len(free), objects, edges, base=self.base, relations=relations,
                     embedding=self.embedding if at_top else None)

    def permute(self, order):
        """The same cube with new direction k taken from old direction order[k]."""
        order = list(order)
        if sorted(order) != list(range(self.dimension)):
            raise ValueError("Invalid direction order {} for a {}-cube".format(order, self.dimension))
        if order == list(range(self.dimension)):
            return self

        def lift(w):
            v = [0] * self.dimension
            for k, d in enumerate(order):
                v[d] = w[k]
            return tuple(v)

        objects = {w: self.objects[lift(w)] for w in vertices(self.dimension)}
        edges = {(w, k): self.edges[(lift(w), d)]
                 for w in vertices(self.dimension) for k, d in enumerate(order) if w[k] == 1}
        relations = [self.relations[d] for d in order] if self.relations is not None else None
        return NCube(self.context, self.dimension, objects, edges, base=self.base, relations=relations)

    def as_arrow(self, direction):
        """(domain, codomain, ribs) viewing the cube as an arrow of (n-1)-cubes in the given direction."""
        domain = self.face({direction: 1})
        codomain = self.face({direction: 0})
        ribs = {w: self.edge(w[:direction] + (1,) + w[direction:], direction) for w in vertices(self.dimension - 1)}
        return domain, codomain, ribs

    def to_json(self):
        ctx = self.context
        data = {
            "kind": "cube",
            "context": ctx.kind,
            "dimension": self.dimension,
            "vertices": {bits(v): ctx.describe(obj) for v, obj in self.objects.items()},
            "edges": [{"from": bits(v), "direction": i, "map": ctx.map_json(f)}
                      for (v, i), f in sorted(self.edges.items())],
        }
        if self.relations is not None:
            data["relations"] = [ctx.lattice.describe(R) for R in self.relations]
        return data

    @classmethod
    def from_json(cls, data):
        ctx = make_context(data["context"])
        objects = {parse_bits(k): ctx.object_from_json(v) for k, v in data["vertices"].items()}
        edges = {(parse_bits(e["from"]), int(e["direction"])): ctx.map_from_json(e["map"]) for e in data["edges"]}
        return cls(ctx, int(data["dimension"]), objects, edges)


def build_cube(context, X, relations):
    """
    The n-fold regular epimorphism induced by relations (R_i) on X.

    Vertex v carries X / ⋁_{v_i = 0} R_i, and edges are the canonical quotient maps.
    """
    relations = [context.validate_relation(X, R) for R in relations]
    n = len(relations)
    if n > MAX_CUBE_DIMENSION:
        raise ValueError("Cube dimension {} exceeds the supported maximum {}".format(n, MAX_CUBE_DIMENSION))
    joins = {}
    for v in vertices(n):
        J = context.bottom(X)
        for i in range(n):
            if v[i] == 0:
                J = context.join(J, relations[i])
        joins[v] = J
    objects = {v: context.quotient(X, J) for v, J in joins.items()}
    edges = {(v, i): context.quotient_map(X, joins[v], joins[lower(v, i)])
             for v in vertices(n) for i in range(n) if v[i] == 1}
    return NCube(context, n, objects, edges, base=X, relations=relations,
                 embedding=context.initial_embedding(X))


def eq_n(F, direction=0):
    """
    Kernel pair of F viewed as an arrow of (n-1)-cubes in the given direction.

    Returns
    -------
    NCube
        The (n-1)-cube of pointwise kernel pairs; ``legs`` holds the two projections at every vertex.
    """
    ctx = F.context
    if F.dimension == 0:
        raise ValueError("A 0-cube has no direction to take kernel pairs in")
    A, _, ribs = F.as_arrow(direction)
    for w, f in ribs.items():
        if not ctx.is_surjective(f):
            raise ValueError("Rib at {} in direction {} is not surjective".format(bits(w), direction))
    objects, legs = {}, {}
    for w, f in ribs.items():
        P, p1, p2 = ctx.pullback(f, f)
        objects[w] = P
        legs[w] = (p1, p2)
    edges = {}
    for (w, k), a in A.edges.items():
        target = lower(w, k)
        (p1, p2), (q1, q2) = legs[w], legs[target]
        edges[(w, k)] = ctx.pair(q1, q2, ctx.compose(a, p1), ctx.compose(a, p2))
    embedding = None
    if F.embedding is not None:
        p1, p2 = legs[A.top]
        embedding = ctx.pair_embedding(F.embedding, p1, p2)
    cube = NCube(ctx, F.dimension - 1, objects, edges, base=F.base, embedding=embedding)
    cube.legs = legs
    return cube


def iterated_kernel_pairs(F):
    """Eq applied in every direction: the n-fold relation on the base realised by the cube."""
    from cubelab.cubes.nfold import NFoldEqRel

    if F.embedding is None or F.base is None:
        raise ValueError("Iterated kernel pairs need a cube induced on a base object")
    n = F.dimension
    cube = F
    for _ in range(n):
        cube = eq_n(cube, 0)
    carrier = F.context.embedded_carrier(F.base, cube.embedding, n)
    return NFoldEqRel(F.context, F.base, n, carrier)


def is_n_fold_regular_epi(F):
    """
    True iff every edge is surjective and every 2-face is a pushout.

    Raises
    ------
    ValueError
        If some 2-face does not commute.
    """
    ctx = F.context
    trace = []
    for (v, i), f in sorted(F.edges.items()):
        holds = ctx.is_surjective(f)
        trace.append({"check": "edge_surjective", "from": bits(v), "direction": i, "holds": holds})
        if not holds:
            witness = {"edge": {"from": bits(v), "direction": i}, "unreached": ctx.unreached(f)}
            return CheckReport.failed(witness, trace=trace)
    for v, i, j in F.squares():
        r, s, u, w = F.square_maps(v, i, j)
        if not ctx.equal_maps(ctx.compose(u, r), ctx.compose(w, s)):
            raise ValueError("Face at {} in directions ({}, {}) does not commute".format(bits(v), i, j))
        holds = ctx.is_pushout(r, s, u, w)
        trace.append({"check": "face_pushout", "vertex": bits(v), "directions": [i, j], "holds": holds})
        if not holds:
            return CheckReport.failed({"face": {"vertex": bits(v), "directions": [i, j]}}, trace=trace)
    return CheckReport.passed(trace=trace)


def comparison_cube(cube):
    """
    The (n-1)-cube comparing the initial (n-2)-cube of the square read off the last two directions with the
    pointwise pullback of the rest of the square. Its last direction carries the comparison maps.
    """
    ctx = cube.context
    n = cube.dimension
    a, b = n - 2, n - 1
    rest = vertices(n - 2)

    def at(w, xa, xb):
        return w + (xa, xb)

    pullbacks = {}
    objects, edges = {}, {}
    for w in rest:
        left = cube.edge(at(w, 0, 1), b)
        right = cube.edge(at(w, 1, 0), a)
        P, p1, p2 = ctx.pullback(left, right)
        pullbacks[w] = (p1, p2)
        objects[w + (1,)] = cube.vertex(at(w, 1, 1))
        objects[w + (0,)] = P
        edges[(w + (1,), n - 2)] = ctx.pair(p1, p2, cube.edge(at(w, 1, 1), a), cube.edge(at(w, 1, 1), b))
    for w in rest:
        for i in range(n - 2):
            if w[i] != 1:
                continue
            target = lower(w, i)
            p1, p2 = pullbacks[w]
            q1, q2 = pullbacks[target]
            edges[(w + (1,), i)] = cube.edge(at(w, 1, 1), i)
            edges[(w + (0,), i)] = ctx.pair(q1, q2, ctx.compose(cube.edge(at(w, 0, 1), i), p1),
                                            ctx.compose(cube.edge(at(w, 1, 0), i), p2))
    return NCube(ctx, n - 1, objects, edges)


def _extension_witness(cube, path, trace):
    ctx = cube.context
    n = cube.dimension
    if n == 0:
        return None
    if n == 1:
        f = cube.edge((1,), 0)
        holds = ctx.is_surjective(f)
        trace.append({"path": path, "check": "surjective", "holds": holds})
        if holds:
            return None
        return {"path": path, "check": "surjective", "unreached": ctx.unreached(f)}
    a, b = n - 2, n - 1
    for d, bit in ((b, 1), (b, 0), (a, 1), (a, 0)):
        witness = _extension_witness(cube.face({d: bit}), "{}/side({}={})".format(path, d, bit), trace)
        if witness is not None:
            return witness
    return _extension_witness(comparison_cube(cube), "{}/comparison".format(path), trace)


def is_n_cubic_extension(F, order=None, check_symmetry=True):
    """
    Recursive n-cubic extension check.

    A 1-cube is an extension iff its map is surjective. For n ≥ 2 the cube is read as a square of (n-2)-cubes in
    the last two directions of ``order``; its four sides and the comparison to the pullback of the square must all
    be (n-1)-cubic extensions.

    Parameters
    ----------
    F : NCube
    order : list of int, optional
        Direction order; the identity by default
    check_symmetry : bool
        Re-evaluate with every direction as the arrow direction and record a defect on disagreement

    Returns
    -------
    CheckReport
        The witness is the first failing surjectivity check with its recursion path.
    """
    n = F.dimension
    order = list(range(n)) if order is None else list(order)
    trace = []
    witness = _extension_witness(F.permute(order), "cube", trace)
    report = CheckReport(witness is None, witness=witness, trace=trace)
    if check_symmetry and n >= 2:
        for d in range(n):
            if d == order[-1]:
                continue
            alternative = [k for k in order if k != d] + [d]
            holds = _extension_witness(F.permute(alternative), "cube", []) is None
            report.trace.append({"check": "direction_independence", "arrow_direction": d, "holds": holds})
            if holds != report.verdict:
                report.add_defect("extension verdict {} with arrow direction {} disagrees with {} for order {}"
                                  .format(holds, d, report.verdict, order))
    return report
