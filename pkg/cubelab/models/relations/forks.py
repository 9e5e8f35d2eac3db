from cubelab.models.relations.finset import FinSet, FinMap
from cubelab.models.relations.eqrel import EqRel, BinaryRelation, kernel_pair, coequaliser


class ReflexiveGraph:
    """Edges, vertices, source d, target c and reflexivity e with d∘e = 1 = c∘e."""

    def __init__(self, edges, vertices, d, c, e):
        for name, arrow, dom, cod in (("d", d, edges, vertices), ("c", c, edges, vertices), ("e", e, vertices, edges)):
            if arrow.domain.size != dom.size or arrow.codomain.size != cod.size:
                raise ValueError("Map {} has the wrong shape for a reflexive graph".format(name))
        identity = FinMap.identity(vertices)
        if d.after(e) != identity or c.after(e) != identity:
            raise ValueError("Reflexive graph requires d∘e = identity = c∘e")
        self.edges = edges
        self.vertices = vertices
        self.d = d
        self.c = c
        self.e = e

    @classmethod
    def from_eqrel(cls, R):
        """The graph whose edges are the pairs of R, in lexicographic order."""
        pairs = sorted(R.pairs())
        index = {pair: i for i, pair in enumerate(pairs)}
        edges = FinSet(len(pairs))
        d = FinMap(edges, R.carrier, [p[0] for p in pairs])
        c = FinMap(edges, R.carrier, [p[1] for p in pairs])
        e = FinMap(R.carrier, edges, [index[(x, x)] for x in R.carrier])
        return cls(edges, R.carrier, d, c, e)

    def image_relation(self):
        return BinaryRelation(self.vertices, zip(self.d.table, self.c.table))

    def is_relation(self):
        # jointly monic: no two edges share both endpoints
        return len(set(zip(self.d.table, self.c.table))) == self.edges.size

    def support(self):
        return EqRel.generated_by(self.vertices, zip(self.d.table, self.c.table))


class Fork:
    """A reflexive graph (d, c, e) augmented by an arrow f with f∘d = f∘c."""

    def __init__(self, graph, arrow):
        if arrow.domain.size != graph.vertices.size:
            raise ValueError("Fork arrow must start at the graph's vertices")
        if arrow.after(graph.d) != arrow.after(graph.c):
            raise ValueError("Fork requires f∘d = f∘c")
        self.graph = graph
        self.arrow = arrow


def eq_fork(f):
    return Fork(ReflexiveGraph.from_eqrel(kernel_pair(f)), f)


def coeq_fork(G):
    return Fork(G, coequaliser(G.support()))


def is_exact_fork(F):
    """
    True iff the graph is the kernel relation of the arrow and the arrow is its coequaliser.
    """
    f = F.arrow
    if not f.is_surjective() or not F.graph.is_relation():
        return False
    return F.graph.image_relation().pairs == kernel_pair(f).pairs()
