import itertools

from cubelab.models.relations.eqrel import EqRel, all_partitions
from cubelab.models.groups.group import FinGroup, GroupHom


class NormalSubgroup:
    """A normal subgroup of a finite group, stored as the sorted set of its element indices."""

    def __init__(self, parent, elements):
        elements = tuple(sorted(set(int(a) for a in elements)))
        members = set(elements)
        if parent.identity not in members:
            raise ValueError("Subgroup must contain the identity")
        for a in elements:
            if not 0 <= a < len(parent):
                raise ValueError("Element {} outside group of order {}".format(a, len(parent)))
            if parent.inv(a) not in members:
                raise ValueError("Subset is not closed under inverses at {}".format(a))
            for b in elements:
                if parent.mul(a, b) not in members:
                    raise ValueError("Subset is not closed under products at ({}, {})".format(a, b))
            for g in parent.elements:
                if parent.conjugate(a, g) not in members:
                    raise ValueError("Subgroup is not normal: conjugate of {} by {} escapes".format(a, g))
        self.parent = parent
        self.elements = elements
        self.members = frozenset(members)

    def __eq__(self, other):
        return isinstance(other, NormalSubgroup) and self.parent == other.parent and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return "NormalSubgroup({})".format(list(self.elements))

    def __len__(self):
        return len(self.elements)

    def __contains__(self, a):
        return a in self.members

    def __le__(self, other):
        return self.members <= other.members

    @property
    def order(self):
        return len(self.elements)

    @classmethod
    def trivial(cls, parent):
        return cls(parent, [parent.identity])

    @classmethod
    def whole(cls, parent):
        return cls(parent, parent.elements)

    def to_json(self):
        return {"elements": list(self.elements)}


def _closure(G, generators, normal):
    members = {G.identity}
    frontier = list(generators)
    while frontier:
        a = frontier.pop()
        if a in members:
            continue
        new = {a}
        if normal:
            new.update(G.conjugate(a, g) for g in G.elements)
        for b in new:
            if b in members:
                continue
            members.add(b)
            frontier.extend(G.mul(b, c) for c in list(members))
            frontier.extend(G.mul(c, b) for c in list(members))
    return members


def subgroup_generated(G, generators):
    """Element set of the subgroup generated by the given elements."""
    return sorted(_closure(G, generators, normal=False))


def normal_closure(G, generators):
    return NormalSubgroup(G, _closure(G, generators, normal=True))


def is_normal(G, elements):
    try:
        NormalSubgroup(G, elements)
    except ValueError:
        return False
    return True


def congruence_of(K):
    """Coset partition: x ~ y iff x·y⁻¹ ∈ K."""
    G = K.parent
    labels = [min(G.mul(k, x) for k in K.elements) for x in G.elements]
    return EqRel.from_labels(G.carrier, labels)


def normal_subgroup_of(R, G):
    """
    Recovers the normal subgroup whose cosets are the blocks of R.

    Raises
    ------
    ValueError
        If R is not a congruence of G.
    """
    if R.carrier.size != len(G):
        raise ValueError("Relation carrier size {} does not match group order {}".format(R.carrier.size, len(G)))
    block = R.block_of(G.identity)
    try:
        K = NormalSubgroup(G, block)
    except ValueError as e:
        raise ValueError("Relation is not a congruence: identity block is not a normal subgroup ({})".format(e))
    for b in R.blocks:
        coset = sorted(G.mul(k, b[0]) for k in K.elements)
        if tuple(coset) != b:
            raise ValueError("Relation is not a congruence: block {} is not a coset".format(list(b)))
    return K


def is_congruence(R, G):
    try:
        normal_subgroup_of(R, G)
    except ValueError:
        return False
    return True


def _check_parents(K, L):
    if K.parent != L.parent:
        raise ValueError("Normal subgroups belong to different groups")


def meet_ns(K, L):
    _check_parents(K, L)
    return NormalSubgroup(K.parent, K.members & L.members)


def join_ns(K, L):
    _check_parents(K, L)
    G = K.parent
    return NormalSubgroup(G, {G.mul(k, l) for k in K.elements for l in L.elements})


def quotient(G, K):
    """
    Coset group G/K and the canonical projection; cosets are ordered as the blocks of congruence_of(K).
    """
    R = congruence_of(K)
    reps = [b[0] for b in R.blocks]
    table = [[R.labels[G.mul(a, b)] for b in reps] for a in reps]
    name = "{}/{}".format(G.name, K.order) if G.name else None
    Q = FinGroup(table, name=name)
    return Q, GroupHom(G, Q, R.labels)


def enumerate_normal_subgroups(G):
    """
    All normal subgroups of G, ordered by (order, elements).

    Normal closures of single elements generate the lattice under joins; the closure under pairwise joins is
    taken until a fixpoint.
    """
    found = {NormalSubgroup.trivial(G)}
    found.update(normal_closure(G, [a]) for a in G.elements)
    frontier = list(found)
    while frontier:
        new = set()
        for K, L in itertools.product(frontier, list(found)):
            J = join_ns(K, L)
            if J not in found:
                new.add(J)
        found.update(new)
        frontier = list(new)
    return sorted(found, key=lambda K: (K.order, K.elements))


def congruences(G):
    """All congruences of G by filtering every partition of its carrier; only for small groups."""
    if len(G) > 12:
        raise ValueError("Partition filtering is limited to groups of order <= 12, got {}".format(len(G)))
    return [R for R in all_partitions(G.carrier) if is_congruence(R, G)]


class Subquotient:
    """
    M/D for normal subgroups D ≤ M of a group X.

    Elements are the cosets of D inside M, ordered by least element; ``group`` is the resulting FinGroup.
    """

    def __init__(self, M, D):
        _check_parents(M, D)
        if not D <= M:
            raise ValueError("Subquotient requires D ≤ M")
        X = M.parent
        cosets = sorted({tuple(sorted(X.mul(d, m) for d in D.elements)) for m in M.elements})
        self.X = X
        self.M = M
        self.D = D
        self.cosets = cosets
        self.index = {m: i for i, coset in enumerate(cosets) for m in coset}
        table = [[self.index[X.mul(a[0], b[0])] for b in cosets] for a in cosets]
        self.group = FinGroup(table)

    @property
    def carrier(self):
        return self.group.carrier

    def induced_map(self, target):
        """Map m·D -> m·D' into a subquotient M'/D' with M ≤ M' and D ≤ D'."""
        if not (self.M <= target.M and self.D <= target.D):
            raise ValueError("No induced map between these subquotients")
        return GroupHom(self.group, target.group, [target.index[coset[0]] for coset in self.cosets])

    def to_json(self):
        return {"numerator": list(self.M.elements), "denominator": list(self.D.elements), "order": len(self.cosets)}
