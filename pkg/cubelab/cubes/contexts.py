import abc
import itertools

from cubelab.environment.constants import FINSET, GROUP, ABELIAN, TUPLE_MATERIALIZATION_LIMIT
from cubelab.models.relations.finset import FinSet, FinMap
from cubelab.models.relations.eqrel import EqRel, meet_rel, join_rel, kernel_pair
from cubelab.models.relations.limits import pullback, pair_into_pullback
from cubelab.models.groups.group import FinGroup, GroupHom
from cubelab.models.groups.normal import (
    NormalSubgroup, Subquotient, congruence_of, normal_subgroup_of, meet_ns, join_ns,
)
from cubelab.models.abelian.matrix import IntMatrix, vstack, block_diag
from cubelab.models.abelian.lattice import (
    IntLattice, lattice_meet, lattice_join, lattice_image, lattice_preimage,
)
from cubelab.models.abelian.fgab import (
    FgAbGroup, FgAbHom, AbSubquotient, pullback_ab, pair_into_pullback_ab, is_surjective_ab, is_injective_ab,
    image_is_kernel,
)


# --------------------- Lattices of relations ------------------------


class Lattice(abc.ABC):
    """Meet and join on the relations (or normal subobjects) of a fixed object."""

    @abc.abstractmethod
    def meet(self, a, b):
        raise NotImplementedError

    @abc.abstractmethod
    def join(self, a, b):
        raise NotImplementedError

    def leq(self, a, b):
        return self.meet(a, b) == a

    def describe(self, a):
        return a.to_json()

    def meet_all(self, elements):
        elements = list(elements)
        result = elements[0]
        for a in elements[1:]:
            result = self.meet(result, a)
        return result

    def join_all(self, elements):
        elements = list(elements)
        result = elements[0]
        for a in elements[1:]:
            result = self.join(result, a)
        return result


class RelationLattice(Lattice):
    def meet(self, a, b):
        return meet_rel(a, b)

    def join(self, a, b):
        return join_rel(a, b)

    def leq(self, a, b):
        return a <= b


class NormalSubgroupLattice(Lattice):
    def meet(self, a, b):
        return meet_ns(a, b)

    def join(self, a, b):
        return join_ns(a, b)

    def leq(self, a, b):
        return a <= b


class SubgroupLattice(Lattice):
    """Subgroups of Z^d (or of a quotient Z^d/L, as the lattices containing L)."""

    def meet(self, a, b):
        return lattice_meet(a, b)

    def join(self, a, b):
        return lattice_join(a, b)

    def leq(self, a, b):
        return a <= b


def lattice_for(element):
    if isinstance(element, EqRel):
        return RelationLattice()
    elif isinstance(element, NormalSubgroup):
        return NormalSubgroupLattice()
    elif isinstance(element, IntLattice):
        return SubgroupLattice()
    else:
        raise ValueError("No lattice structure known for {}".format(type(element).__name__))


# --------------------- Contexts ------------------------


class Context(abc.ABC):
    """
    The ambient environment a cube or grid lives in.

    Objects, maps and relations are opaque to the higher layers; every construction goes through these hooks.
    """

    kind = None
    maltsev = False
    pointed = False

    def __init__(self):
        self.lattice = self._make_lattice()

    def __repr__(self):
        return "{}()".format(type(self).__name__)

    def __eq__(self, other):
        return type(self) is type(other)

    def __hash__(self):
        return hash(self.kind)

    @abc.abstractmethod
    def _make_lattice(self):
        raise NotImplementedError

    # objects and maps

    @abc.abstractmethod
    def identity(self, obj):
        raise NotImplementedError

    @abc.abstractmethod
    def compose(self, g, f):
        """g∘f"""
        raise NotImplementedError

    @abc.abstractmethod
    def is_surjective(self, f):
        raise NotImplementedError

    @abc.abstractmethod
    def is_injective(self, f):
        raise NotImplementedError

    @abc.abstractmethod
    def equal_maps(self, f, g):
        raise NotImplementedError

    @abc.abstractmethod
    def pullback(self, f, g):
        """(P, p1, p2) for the cospan f, g."""
        raise NotImplementedError

    @abc.abstractmethod
    def pair(self, p1, p2, a, b):
        """The universal map <a, b> into the pullback with projections p1, p2."""
        raise NotImplementedError

    @abc.abstractmethod
    def size(self, obj):
        """Number of elements, or None if infinite."""
        raise NotImplementedError

    @abc.abstractmethod
    def unreached(self, f):
        """A JSON witness outside the image of f, or None."""
        raise NotImplementedError

    def is_iso(self, f):
        return self.is_injective(f) and self.is_surjective(f)

    def describe(self, obj):
        return obj.to_json()

    def map_json(self, f):
        return f.to_json()

    @abc.abstractmethod
    def object_from_json(self, data):
        raise NotImplementedError

    @abc.abstractmethod
    def map_from_json(self, data):
        raise NotImplementedError

    # relations on an object

    @abc.abstractmethod
    def validate_relation(self, X, R):
        """Returns R in this context's canonical relation form, raising ValueError if it is not a congruence."""
        raise NotImplementedError

    @abc.abstractmethod
    def bottom(self, X):
        raise NotImplementedError

    @abc.abstractmethod
    def top(self, X):
        raise NotImplementedError

    @abc.abstractmethod
    def quotient(self, X, R):
        raise NotImplementedError

    @abc.abstractmethod
    def quotient_map(self, X, R, S):
        """The canonical map X/R -> X/S for R ≤ S."""
        raise NotImplementedError

    @abc.abstractmethod
    def kernel(self, f):
        """The kernel relation of f, in relation form on its domain."""
        raise NotImplementedError

    def meet(self, R, S):
        return self.lattice.meet(R, S)

    def join(self, R, S):
        return self.lattice.join(R, S)

    def is_pushout(self, r, s, u, v):
        """A commuting square of surjections is a pushout iff ker(u∘r) = ker(r) ∨ ker(s)."""
        return self.join(self.kernel(r), self.kernel(s)) == self.kernel(self.compose(u, r))

    # n-fold relations

    @abc.abstractmethod
    def initial_embedding(self, X):
        raise NotImplementedError

    @abc.abstractmethod
    def pair_embedding(self, embedding, p1, p2):
        raise NotImplementedError

    @abc.abstractmethod
    def embedded_carrier(self, X, embedding, n):
        """The n-fold relation on X realised by an embedding of the top object into X^(2^n)."""
        raise NotImplementedError

    @abc.abstractmethod
    def box_carrier(self, X, relations, limit=TUPLE_MATERIALIZATION_LIMIT):
        """The parallel 2^n-tuples over the relations, or None when above the materialisation limit."""
        raise NotImplementedError

    @abc.abstractmethod
    def face_relation(self, X, carrier, n, i):
        raise NotImplementedError

    def box_size_bound(self, X, relations):
        return None


class SetContext(Context):
    """Finite sets, functions and equivalence relations."""

    kind = FINSET

    def _make_lattice(self):
        return RelationLattice()

    def carrier(self, X):
        return X.carrier if isinstance(X, FinGroup) else X

    @staticmethod
    def _table(f):
        return f.underlying if isinstance(f, GroupHom) else f

    def underlying(self, f):
        return self._table(f)

    def identity(self, obj):
        return FinMap.identity(self.carrier(obj))

    def compose(self, g, f):
        return self._table(g).after(self._table(f))

    def is_surjective(self, f):
        return self._table(f).is_surjective()

    def is_injective(self, f):
        return self._table(f).is_injective()

    def equal_maps(self, f, g):
        return self._table(f) == self._table(g)

    def pullback(self, f, g):
        return pullback(self._table(f), self._table(g))

    def pair(self, p1, p2, a, b):
        return pair_into_pullback(p1, p2, self._table(a), self._table(b))

    def size(self, obj):
        return self.carrier(obj).size

    def unreached(self, f):
        f = self._table(f)
        missed = sorted(set(range(f.codomain.size)) - set(f.table))
        return {"element": missed[0]} if missed else None

    def describe(self, obj):
        return self.carrier(obj).to_json()

    def map_json(self, f):
        return self._table(f).to_json()

    def object_from_json(self, data):
        return FinSet.from_json(data)

    def map_from_json(self, data):
        return FinMap.from_json(data)

    def validate_relation(self, X, R):
        if not isinstance(R, EqRel):
            raise ValueError("Expected an equivalence relation, got {}".format(type(R).__name__))
        if R.carrier.size != self.size(X):
            raise ValueError("Relation on {} elements does not live on an object of size {}"
                             .format(R.carrier.size, self.size(X)))
        return R

    def bottom(self, X):
        return EqRel.discrete(self.size(X))

    def top(self, X):
        return EqRel.full(self.size(X))

    def quotient(self, X, R):
        return FinSet(len(R.blocks))

    def quotient_map(self, X, R, S):
        if not R <= S:
            raise ValueError("Quotient maps need R ≤ S")
        return FinMap(FinSet(len(R.blocks)), FinSet(len(S.blocks)), [S.labels[b[0]] for b in R.blocks])

    def kernel(self, f):
        return kernel_pair(self._table(f))

    def initial_embedding(self, X):
        return [(x,) for x in range(self.size(X))]

    def pair_embedding(self, embedding, p1, p2):
        return [embedding[a] + embedding[b] for a, b in zip(p1.table, p2.table)]

    def embedded_carrier(self, X, embedding, n):
        return frozenset(embedding)

    def box_size_bound(self, X, relations):
        bound = self.size(X)
        for k, R in enumerate(relations):
            largest = max((len(b) for b in R.blocks), default=0)
            bound *= largest ** (2 ** k)
        return bound

    def box_carrier(self, X, relations, limit=TUPLE_MATERIALIZATION_LIMIT):
        if self.box_size_bound(X, relations) > limit:
            return None
        tuples = [(x,) for x in range(self.size(X))]
        for R in relations:
            known = set(tuples)
            extended = []
            for a in tuples:
                # a' ranges over the tuples with a'[j] R a[j] at every position j
                for b in itertools.product(*(R.block_of(x) for x in a)):
                    if b in known:
                        extended.append(a + b)
            tuples = extended
        return frozenset(tuples)

    def face_relation(self, X, carrier, n, i):
        return EqRel.generated_by(self.size(X), ((t[0], t[1 << i]) for t in carrier))

    # pointed grids are not available over bare sets

    def as_normal(self, X, R):
        raise ValueError("Pointed constructions need a group or abelian context")


class GroupContext(SetContext):
    """
    Finite groups and their congruences.

    Cube vertices are stored by their underlying carriers: surjectivity, pullbacks and kernel pairs of group
    homomorphisms are computed on underlying sets.
    """

    kind = GROUP
    maltsev = True
    pointed = True

    def validate_relation(self, X, R):
        if not isinstance(X, FinGroup):
            raise ValueError("Group context relations need a FinGroup base, got {}".format(type(X).__name__))
        if isinstance(R, NormalSubgroup):
            if R.parent != X:
                raise ValueError("Normal subgroup belongs to another group")
            return congruence_of(R)
        R = super().validate_relation(X, R)
        # raises ValueError for non-congruences
        normal_subgroup_of(R, X)
        return R

    def as_normal(self, X, R):
        if isinstance(R, NormalSubgroup):
            return R
        return normal_subgroup_of(R, X)

    @property
    def normal_lattice(self):
        return NormalSubgroupLattice()

    def normal_top(self, X):
        return NormalSubgroup.whole(X)

    def normal_bottom(self, X):
        return NormalSubgroup.trivial(X)

    def subquotient(self, X, M, D):
        return Subquotient(M, D)

    def subquotient_object(self, sq):
        return sq.group

    def pointed_describe(self, obj):
        return obj.to_json()

    def pointed_map_json(self, f):
        return {"table": list(f.table)}

    def image_is_kernel(self, m, p):
        image = set(m.table)
        kernel = set(p.kernel_elements())
        return image == kernel

    def pointed_object_from_json(self, data):
        return FinGroup(data["table"], labels=data.get("labels"), name=data.get("name"))

    def pointed_map_from_json(self, data, domain, codomain):
        return GroupHom(domain, codomain, data["table"])


class AbelianContext(Context):
    """
    Finitely generated abelian groups Z^g/L.

    Relations on X are its subgroups, stored as the lattices S with L ≤ S ≤ Z^g. n-fold relations are lattices in
    Z^(g·2^n) containing L^(2^n).
    """

    kind = ABELIAN
    maltsev = True
    pointed = True

    def _make_lattice(self):
        return SubgroupLattice()

    def identity(self, obj):
        return FgAbHom.identity(obj)

    def compose(self, g, f):
        return g.after(f)

    def is_surjective(self, f):
        return is_surjective_ab(f)

    def is_injective(self, f):
        return is_injective_ab(f)

    def equal_maps(self, f, g):
        return f.equals(g)

    def pullback(self, f, g):
        return pullback_ab(f, g)

    def pair(self, p1, p2, a, b):
        return pair_into_pullback_ab(p1, p2, a, b)

    def size(self, obj):
        return obj.order()

    def unreached(self, f):
        j = f.unreached_generator()
        return None if j is None else {"generator": j}

    def object_from_json(self, data):
        return FgAbGroup.from_json(data)

    def map_from_json(self, data):
        return FgAbHom.from_json(data)

    def validate_relation(self, X, R):
        if not isinstance(R, IntLattice):
            raise ValueError("Expected a subgroup lattice, got {}".format(type(R).__name__))
        if R.ambient_rank != X.rank:
            raise ValueError("Subgroup of Z^{} does not live on a group with {} generators"
                             .format(R.ambient_rank, X.rank))
        # subgroups of Z^g/L are the lattices containing L
        return lattice_join(R, X.relations)

    def bottom(self, X):
        return X.relations

    def top(self, X):
        return IntLattice.full(X.rank)

    def quotient(self, X, R):
        return FgAbGroup(R.basis)

    def quotient_map(self, X, R, S):
        if not R <= S:
            raise ValueError("Quotient maps need R ≤ S")
        return FgAbHom(FgAbGroup(R.basis), FgAbGroup(S.basis), IntMatrix.identity(X.rank))

    def kernel(self, f):
        return f.preimage_lattice()

    def initial_embedding(self, X):
        return IntMatrix.identity(X.rank)

    def pair_embedding(self, embedding, p1, p2):
        return vstack(embedding.matmul(p1.matrix), embedding.matmul(p2.matrix))

    def _power_relations(self, X, copies):
        return IntLattice(X.rank * copies, block_diag(*([X.presentation] * copies)))

    def embedded_carrier(self, X, embedding, n):
        return lattice_join(lattice_image(embedding), self._power_relations(X, 2 ** n))

    def box_carrier(self, X, relations, limit=TUPLE_MATERIALIZATION_LIMIT):
        """Preimage of the product of the relations under the edge-difference map of the cube."""
        g, n = X.rank, len(relations)
        size = 2 ** n
        rows, targets = [], []
        for w in range(size):
            for i in range(n):
                if w >> i & 1:
                    for r in range(g):
                        row = [0] * (g * size)
                        row[w * g + r] = 1
                        row[(w - (1 << i)) * g + r] = -1
                        rows.append(row)
                    targets.append(relations[i].basis)
        if not rows:
            return IntLattice.full(g)
        difference = IntMatrix.from_rows(rows)
        target = IntLattice(difference.rows, block_diag(*targets))
        return lattice_join(lattice_preimage(difference, target), self._power_relations(X, size))

    def face_relation(self, X, carrier, n, i):
        g = X.rank
        size = 2 ** n
        selector = IntMatrix.identity(g * size).select_rows(list(range(g)) + list(range((1 << i) * g, ((1 << i) + 1) * g)))
        projected = lattice_join(lattice_image(selector, carrier), self._power_relations(X, 2))
        # (a, 0) lies in the projection iff a is in the subgroup
        inclusion = vstack(IntMatrix.identity(g), IntMatrix.zeros(g, g))
        return lattice_preimage(inclusion, projected)

    def as_normal(self, X, R):
        return self.validate_relation(X, R)

    @property
    def normal_lattice(self):
        return SubgroupLattice()

    def normal_top(self, X):
        return IntLattice.full(X.rank)

    def normal_bottom(self, X):
        return X.relations

    def subquotient(self, X, M, D):
        return AbSubquotient(X, M, D)

    def subquotient_object(self, sq):
        return sq.group

    def pointed_describe(self, obj):
        return obj.to_json()

    def pointed_map_json(self, f):
        return {"matrix": f.matrix.to_json()}

    def image_is_kernel(self, m, p):
        return image_is_kernel(m, p)

    def pointed_object_from_json(self, data):
        return FgAbGroup.from_json(data)

    def pointed_map_from_json(self, data, domain, codomain):
        if not data["matrix"]:
            return FgAbHom.zero(domain, codomain)
        return FgAbHom(domain, codomain, IntMatrix(codomain.rank, domain.rank, data["matrix"]))


CONTEXTS = {
    FINSET: SetContext,
    GROUP: GroupContext,
    ABELIAN: AbelianContext,
}


def make_context(kind):
    if kind not in CONTEXTS:
        raise ValueError("Invalid context kind {}, expected one of {}".format(kind, sorted(CONTEXTS)))
    return CONTEXTS[kind]()


def context_for(relation):
    """The default context for a relation given without one."""
    if isinstance(relation, EqRel):
        return SetContext()
    elif isinstance(relation, IntLattice):
        return AbelianContext()
    else:
        raise ValueError("No default context for {}".format(type(relation).__name__))


def default_base(context, relation):
    if isinstance(relation, EqRel):
        return relation.carrier
    elif isinstance(relation, IntLattice):
        return FgAbGroup.free(relation.ambient_rank)
    raise ValueError("No default base object for {}".format(type(relation).__name__))
