import itertools

from cubelab.cubes.contexts import SetContext
from cubelab.cubes.cube import bits

MAX_ORACLE_DIMENSION = 3


def _faces(n):
    """Yields (top vertex, free directions) for every face of dimension at least one."""
    for k in range(1, n + 1):
        for free in itertools.combinations(range(n), k):
            fixed = [d for d in range(n) if d not in free]
            for assignment in itertools.product((0, 1), repeat=len(fixed)):
                top = [1] * n
                for d, bit in zip(fixed, assignment):
                    top[d] = bit
                yield tuple(top), free


def _down(v, *directions):
    v = list(v)
    for d in directions:
        v[d] = 0
    return tuple(v)


def _punctured_limit(F, top, free):
    """Families over the coatoms of the face that agree pairwise on the vertices below two coatoms."""
    ctx = F.context
    coatoms = [_down(top, d) for d in free]
    ranges = [range(ctx.size(F.vertex(c))) for c in coatoms]
    limit = set()
    for family in itertools.product(*ranges):
        agrees = True
        for (a, d), (b, e) in itertools.combinations(list(enumerate(free)), 2):
            left = ctx.underlying(F.edge(coatoms[a], e))(family[a])
            right = ctx.underlying(F.edge(coatoms[b], d))(family[b])
            if left != right:
                agrees = False
                break
        if agrees:
            limit.add(family)
    return limit


def brute_extension_failure(F):
    """
    The first face whose initial vertex does not map onto the limit of the rest of the face, or None.

    This is the non-recursive reading of the extension property: for a 1-face the limit is the target of the edge,
    for a 2-face the pullback of the square and for the 3-face the limit of the punctured cube.
    """
    ctx = F.context
    if not isinstance(ctx, SetContext):
        raise ValueError("The brute-force oracle needs finite carriers, got a {} context".format(ctx.kind))
    if F.dimension > MAX_ORACLE_DIMENSION:
        raise ValueError("The brute-force oracle handles cubes up to dimension {}, got {}"
                         .format(MAX_ORACLE_DIMENSION, F.dimension))
    for top, free in _faces(F.dimension):
        limit = _punctured_limit(F, top, free)
        maps = [ctx.underlying(F.edge(top, d)) for d in free]
        image = {tuple(f(x) for f in maps) for x in range(ctx.size(F.vertex(top)))}
        missed = sorted(limit - image)
        if missed:
            return {"face": {"vertex": bits(top), "directions": list(free)}, "unreached": list(missed[0]),
                    "limit_size": len(limit)}
    return None


def brute_extension_oracle(F):
    return brute_extension_failure(F) is None


def brute_box_count(size, relations):
    """
    Number of 2^n-tuples over {0, ..., size-1} whose entries at vertices differing in coordinate i are
    R_i-related, counted by backtracking over tuple positions.
    """
    n = len(relations)
    width = 2 ** n

    def candidates(tuple_so_far):
        w = len(tuple_so_far)
        allowed = None
        for i in range(n):
            if w >> i & 1:
                block = set(relations[i].block_of(tuple_so_far[w - (1 << i)]))
                allowed = block if allowed is None else allowed & block
        return range(size) if allowed is None else sorted(allowed)

    def count(tuple_so_far):
        options = candidates(tuple_so_far)
        if len(tuple_so_far) == width - 1:
            return len(options)
        return sum(count(tuple_so_far + [x]) for x in options)

    return count([])
