from cubelab.environment.report import CheckReport
from cubelab.models.relations.finset import FinSet, FinMap
from cubelab.models.relations.eqrel import kernel_pair, compose_rel, join_rel


def pullback(f, g):
    """
    Pullback of a cospan of finite sets.

    Parameters
    ----------
    f : FinMap
        A -> C
    g : FinMap
        B -> C

    Returns
    -------
    (FinSet, FinMap, FinMap)
        The set {(a, b) : f(a) = g(b)} in lexicographic order and its projections to A and B.
    """
    if f.codomain.size != g.codomain.size:
        raise ValueError("Pullback requires a shared codomain: {} vs {}".format(f.codomain.size, g.codomain.size))
    fibers = g.fibers()
    pairs = [(a, b) for a in range(f.domain.size) for b in fibers[f(a)]]
    P = FinSet(len(pairs))
    return P, FinMap(P, f.domain, [p[0] for p in pairs]), FinMap(P, g.domain, [p[1] for p in pairs])


def pair_into_pullback(p1, p2, a, b):
    """The universal map <a, b> into a pullback given by its projections."""
    index = {pair: i for i, pair in enumerate(zip(p1.table, p2.table))}
    table = []
    for x in range(a.domain.size):
        key = (a(x), b(x))
        if key not in index:
            raise ValueError("Maps do not factor through the pullback at element {}".format(x))
        table.append(index[key])
    return FinMap(a.domain, p1.domain, table)


class Square:
    """
    A commuting square of finite maps::

        A --r--> B
        |        |
        s        u
        v        v
        C --v--> D
    """

    def __init__(self, r, s, u, v):
        if r.domain.size != s.domain.size or u.domain.size != r.codomain.size \
                or v.domain.size != s.codomain.size or u.codomain.size != v.codomain.size:
            raise ValueError("Maps do not form a square")
        self.r = r
        self.s = s
        self.u = u
        self.v = v

    def commutes(self):
        return self.u.after(self.r) == self.v.after(self.s)

    def diagonal(self):
        return self.u.after(self.r)

    def maps(self):
        return self.r, self.s, self.u, self.v

    def to_json(self):
        return {name: m.to_json() for name, m in zip("rsuv", self.maps())}


def _check_square(square):
    if not square.commutes():
        raise ValueError("Square does not commute")
    for name, m in zip("rsuv", square.maps()):
        if not m.is_surjective():
            raise ValueError("Side {} of the square is not surjective".format(name))


def is_regular_pushout(square):
    """
    Decides whether a commuting square of surjections is a regular pushout, i.e. whether the comparison map
    A -> B x_D C is surjective. The report also records whether R∘S = T = S∘R for the kernel pairs R, S of the legs
    and T of the diagonal.
    """
    _check_square(square)
    P, p1, p2 = pullback(square.u, square.v)
    comparison = pair_into_pullback(p1, p2, square.r, square.s)
    R, S, T = kernel_pair(square.r), kernel_pair(square.s), kernel_pair(square.diagonal())
    permutes = compose_rel(R, S) == T.to_relation() == compose_rel(S, R)
    trace = [
        {"check": "comparison_surjective", "pullback_size": P.size, "image_size": len(comparison.image())},
        {"check": "composites_equal_diagonal_kernel", "holds": permutes},
    ]
    missed = sorted(set(range(P.size)) - set(comparison.table))
    if not missed:
        return CheckReport.passed(trace=trace)
    witness = {"unreached": [p1(missed[0]), p2(missed[0])], "pullback_size": P.size}
    return CheckReport.failed(witness, trace=trace)


def is_pushout_square(square):
    """A commuting square of surjections is a pushout iff its diagonal kernel is the join of the leg kernels."""
    _check_square(square)
    R, S, T = kernel_pair(square.r), kernel_pair(square.s), kernel_pair(square.diagonal())
    join = join_rel(R, S)
    if join == T:
        return CheckReport.passed(trace=[{"check": "diagonal_kernel_is_join"}])
    return CheckReport.failed({"diagonal_kernel": T.to_json(), "join": join.to_json()},
                              trace=[{"check": "diagonal_kernel_is_join"}])
