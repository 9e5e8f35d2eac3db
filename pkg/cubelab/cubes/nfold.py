from cubelab.environment.constants import TUPLE_MATERIALIZATION_LIMIT
from cubelab.environment.report import CheckReport
from cubelab.models.relations.finset import FinSet, FinMap
from cubelab.models.relations.eqrel import EqRel
from cubelab.models.abelian.lattice import IntLattice
from cubelab.cubes.contexts import SetContext, context_for, default_base


class NFoldEqRel:
    """
    An n-fold relation on a base object, realised as a subobject of X^(2^n).

    Entry w ∈ {0,1}^n of a tuple sits at position Σ w_k 2^k. In set contexts ``carrier`` is a frozenset of tuples, or
    None when only the generating relations are kept (above the materialisation limit). In abelian contexts it is a
    lattice in Z^(g·2^n) containing L^(2^n).
    """

    def __init__(self, context, base, dimension, carrier, relations=None, notes=None):
        self.context = context
        self.base = base
        self.dimension = dimension
        self.carrier = carrier
        self.relations = None if relations is None else list(relations)
        self.notes = [] if notes is None else list(notes)

        if carrier is None and relations is None:
            raise ValueError("An n-fold relation needs a carrier or its generating relations")

    @classmethod
    def from_tuples(cls, context, base, dimension, tuples):
        width = 2 ** dimension
        size = context.size(base)
        tuples = frozenset(tuple(int(x) for x in t) for t in tuples)
        for t in tuples:
            if len(t) != width:
                raise ValueError("Tuple {} has length {}, expected {}".format(t, len(t), width))
            if any(not 0 <= x < size for x in t):
                raise ValueError("Tuple {} leaves the base of size {}".format(t, size))
        return cls(context, base, dimension, tuples)

    def __eq__(self, other):
        if not isinstance(other, NFoldEqRel) or self.dimension != other.dimension:
            return False
        if self.carrier is not None and other.carrier is not None:
            return self.carrier == other.carrier
        if self.carrier is None and other.carrier is None:
            return self.relations == other.relations
        return False

    def __hash__(self):
        return hash((self.dimension, self.carrier))

    def __repr__(self):
        return "NFoldEqRel(dimension={}, size={})".format(self.dimension, self.size())

    @property
    def materialized(self):
        return self.carrier is not None

    def face_relation(self, i):
        """The relation R_i read off direction i at the initial vertex."""
        if not 0 <= i < self.dimension:
            raise ValueError("Direction {} out of range for an {}-fold relation".format(i, self.dimension))
        if self.carrier is None:
            return self.relations[i]
        return self.context.face_relation(self.base, self.carrier, self.dimension, i)

    def face_relations(self):
        return [self.face_relation(i) for i in range(self.dimension)]

    def contains(self, entries):
        entries = tuple(entries)
        if isinstance(self.carrier, IntLattice):
            return self.carrier.contains([c for vector in entries for c in vector])
        if self.carrier is not None:
            return entries in self.carrier
        if len(entries) != 2 ** self.dimension:
            return False
        return all(self.relations[i].relates(entries[w], entries[w | (1 << i)])
                   for i in range(self.dimension) for w in range(2 ** self.dimension) if not w >> i & 1)

    def size(self):
        """Number of tuples, or None when infinite or not materialised."""
        if self.carrier is None:
            return None
        if isinstance(self.carrier, IntLattice):
            order = self.base.order()
            index = self.carrier.index()
            if order is None or index is None:
                return None
            return order ** (2 ** self.dimension) // index
        return len(self.carrier)

    def projections(self, i):
        """
        Maps from the sorted tuples onto the lexicographic pairs of the face relation in direction i, one per
        edge (w, w + e_i) of the cube.
        """
        if self.carrier is None or isinstance(self.carrier, IntLattice):
            raise ValueError("Projections need a materialised finite carrier")
        tuples = sorted(self.carrier)
        pairs = sorted(self.face_relation(i).pairs())
        index = {p: k for k, p in enumerate(pairs)}
        domain, codomain = FinSet(len(tuples)), FinSet(len(pairs))
        return [FinMap(domain, codomain, [index[(t[w], t[w | (1 << i)])] for t in tuples])
                for w in range(2 ** self.dimension) if not w >> i & 1]

    def to_json(self):
        data = {
            "kind": "nfold",
            "context": self.context.kind,
            "dimension": self.dimension,
            "size": self.size(),
            "notes": self.notes,
        }
        if isinstance(self.carrier, IntLattice):
            data["lattice"] = self.carrier.to_json()
        elif self.carrier is not None:
            data["tuples"] = [list(t) for t in sorted(self.carrier)]
        else:
            data["relations"] = [self.context.lattice.describe(R) for R in self.relations]
        return data


def _resolve(relations, context, X):
    if not relations:
        raise ValueError("Box products need at least one relation")
    context = context_for(relations[0]) if context is None else context
    X = default_base(context, relations[0]) if X is None else X
    return context, X, [context.validate_relation(X, R) for R in relations]


def box_n(relations, context=None, X=None, limit=TUPLE_MATERIALIZATION_LIMIT):
    """
    The parallelistic n-fold relation: 2^n-tuples whose entries at vertices differing only in coordinate i are
    R_i-related.
    """
    context, X, relations = _resolve(relations, context, X)
    carrier = context.box_carrier(X, relations, limit=limit)
    notes = []
    if carrier is None:
        notes.append("box of {} relations exceeds {} tuples; only the generating relations are kept"
                     .format(len(relations), limit))
    return NFoldEqRel(context, X, len(relations), carrier, relations=relations, notes=notes)


def box2(R, S, context=None, X=None):
    """
    The double relation {(x, y, t, z) : x S y, t S z, x R t, y R z}.

    Direction 0 carries S and direction 1 carries R; ``projections(i)`` gives the maps onto the pairs of each.
    """
    return box_n([S, R], context=context, X=X)


def box_relation_on(R, S, context=None, X=None):
    """
    R □ S read as a relation on R: (x, t) ~ (y, z) iff x S y and t S z.

    Returns an EqRel on the lexicographically ordered pairs of R in set contexts, and the box lattice in abelian
    ones, so that meets and joins of these relations go through ``lattice_for``.
    """
    context, X, (R, S) = _resolve([R, S], context, X)
    if isinstance(R, EqRel):
        pairs = sorted(R.pairs())
        return EqRel.from_labels(len(pairs), [(S.labels[x], S.labels[t]) for x, t in pairs])
    return context.box_carrier(X, [S, R])


def meet_nfold(D1, D2):
    if D1.dimension != D2.dimension:
        raise ValueError("Cannot meet relations of dimensions {} and {}".format(D1.dimension, D2.dimension))
    if D1.carrier is None or D2.carrier is None:
        raise ValueError("Meets need materialised carriers")
    return NFoldEqRel(D1.context, D1.base, D1.dimension, D1.carrier & D2.carrier)


def _difference_witness(expected, actual):
    if isinstance(expected, IntLattice):
        for g in expected.generators():
            if not actual.contains(g):
                return {"missing_generator": g}
        for g in actual.generators():
            if not expected.contains(g):
                return {"extra_generator": g}
        return None
    missing = sorted(expected - actual)
    if missing:
        return {"missing_tuple": list(missing[0])}
    extra = sorted(actual - expected)
    return {"extra_tuple": list(extra[0])} if extra else None


def _box_of_faces(D):
    faces = D.face_relations()
    return faces, box_n(faces, context=D.context, X=D.base)


def is_parallelistic(D, cross_check=True):
    """
    True iff D equals the box product of its face relations.

    In Mal'tsev contexts the effectiveness verdict is computed as well and a disagreement is recorded as a defect.
    """
    notes = list(D.notes)
    trace = []
    if D.dimension == 0:
        return CheckReport.passed(trace=[{"check": "parallelistic", "dimension": 0}], notes=notes)
    faces, B = _box_of_faces(D)
    if D.carrier is None or B.carrier is None:
        notes.append("element-level comparison with the box product skipped above the materialisation limit")
        report = CheckReport.passed(trace=[{"check": "parallelistic", "skipped": True}], notes=notes)
    else:
        holds = D.carrier == B.carrier
        trace.append({"check": "equals_box_of_faces", "holds": holds, "size": D.size(), "box_size": B.size()})
        if holds:
            report = CheckReport.passed(trace=trace, notes=notes)
        else:
            report = CheckReport.failed(_difference_witness(B.carrier, D.carrier), trace=trace, notes=notes)
    if cross_check and D.context.maltsev:
        effective = is_effective(D, cross_check=False)
        report.trace.append({"check": "agrees_with_effective", "effective": effective.verdict})
        if effective.verdict != report.verdict:
            report.add_defect("parallelistic verdict {} disagrees with effective verdict {}"
                              .format(report.verdict, effective.verdict))
    return report


def is_effective(D, cross_check=True):
    """
    True iff D is the iterated kernel pair of the cube its face relations induce.
    """
    from cubelab.cubes.cube import build_cube, iterated_kernel_pairs

    notes = list(D.notes)
    if D.dimension == 0:
        return CheckReport.passed(trace=[{"check": "effective", "dimension": 0}], notes=notes)
    faces = D.face_relations()
    ctx = D.context
    bound = ctx.box_size_bound(D.base, faces)
    if D.carrier is None or (bound is not None and bound > TUPLE_MATERIALIZATION_LIMIT):
        notes.append("element-level round trip skipped above the materialisation limit")
        report = CheckReport.passed(trace=[{"check": "effective", "skipped": True}], notes=notes)
    else:
        E = iterated_kernel_pairs(build_cube(ctx, D.base, faces))
        holds = D.carrier == E.carrier
        trace = [{"check": "equals_kernel_pairs_of_induced_cube", "holds": holds, "size": D.size(),
                  "kernel_pairs_size": E.size()}]
        if holds:
            report = CheckReport.passed(trace=trace, notes=notes)
        else:
            report = CheckReport.failed(_difference_witness(E.carrier, D.carrier), trace=trace, notes=notes)
    if cross_check and ctx.maltsev:
        parallelistic = is_parallelistic(D, cross_check=False)
        report.trace.append({"check": "agrees_with_parallelistic", "parallelistic": parallelistic.verdict})
        if parallelistic.verdict != report.verdict:
            report.add_defect("effective verdict {} disagrees with parallelistic verdict {}"
                              .format(report.verdict, parallelistic.verdict))
    return report


def nfold_from_json(data, context=None, base=None):
    """Rebuilds a materialised set-context relation from its JSON form."""
    if "tuples" not in data:
        raise ValueError("Only explicit tuple relations can be loaded")
    context = SetContext() if context is None else context
    tuples = [tuple(t) for t in data["tuples"]]
    if base is None:
        size = 1 + max((x for t in tuples for x in t), default=-1)
        base = FinSet(size)
    return NFoldEqRel.from_tuples(context, base, int(data["dimension"]), tuples)
