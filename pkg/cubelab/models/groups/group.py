import itertools

import numpy as np

from cubelab.environment.constants import MAX_GROUP_ORDER
from cubelab.models.relations.finset import FinSet, FinMap


class FinGroup:
    """
    A finite group given by its Cayley table.

    The table is validated on construction: closure, a two-sided identity, two-sided inverses and associativity.

    Parameters
    ----------
    table : array_like
        size x size matrix of element indices, table[a, b] = a·b
    labels : list of str, optional
        Element names
    name : str, optional
        Display name used by the catalog and in reports
    """

    def __init__(self, table, labels=None, name=None):
        table = np.array(table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise ValueError("Cayley table must be a nonempty square matrix, got shape {}".format(table.shape))
        n = table.shape[0]
        if n > MAX_GROUP_ORDER:
            raise ValueError("Group order {} exceeds the supported maximum {}".format(n, MAX_GROUP_ORDER))
        if table.min() < 0 or table.max() >= n:
            raise ValueError("Cayley table entries must lie in [0, {})".format(n))

        elements = np.arange(n)
        identities = [e for e in range(n) if (table[e] == elements).all() and (table[:, e] == elements).all()]
        if not identities:
            raise ValueError("Cayley table has no identity element")
        identity = identities[0]

        inverse = []
        for a in range(n):
            candidates = np.nonzero((table[a] == identity) & (table[:, a] == identity))[0]
            if len(candidates) == 0:
                raise ValueError("Element {} has no inverse".format(a))
            inverse.append(int(candidates[0]))

        # (ab)c == a(bc) for all a, b, c
        left = table[table]
        right = table[elements[:, None, None], table[None, :, :]]
        if not (left == right).all():
            a, b, c = np.argwhere(left != right)[0]
            raise ValueError("Cayley table is not associative at ({}, {}, {})".format(a, b, c))

        table.setflags(write=False)
        self.table = table
        self.carrier = FinSet(n, labels=labels)
        self.identity = identity
        self.inverse = tuple(inverse)
        self.name = name

    def __len__(self):
        return self.carrier.size

    def __eq__(self, other):
        return isinstance(other, FinGroup) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def __repr__(self):
        return "FinGroup({}, order={})".format(self.name, len(self))

    @property
    def order(self):
        return self.carrier.size

    @property
    def elements(self):
        return range(self.carrier.size)

    def mul(self, a, b):
        return int(self.table[a, b])

    def inv(self, a):
        return self.inverse[a]

    def conjugate(self, a, g):
        """g·a·g⁻¹"""
        return self.mul(self.mul(g, a), self.inverse[g])

    def is_abelian(self):
        return bool((self.table == self.table.T).all())

    def label(self, a):
        return self.carrier.label(a)

    def to_json(self):
        data = {"kind": "cayley", "table": self.table.tolist()}
        if self.carrier.labels is not None:
            data["labels"] = list(self.carrier.labels)
        if self.name is not None:
            data["name"] = self.name
        return data


class GroupHom:
    """A homomorphism between finite groups, stored by its underlying map of carriers."""

    def __init__(self, domain, codomain, table):
        self.underlying = FinMap(domain.carrier, codomain.carrier, table)
        f = np.array(self.underlying.table, dtype=np.int64)
        if not (f[domain.table] == codomain.table[f[:, None], f[None, :]]).all():
            raise ValueError("Map does not preserve products")
        self.domain = domain
        self.codomain = codomain

    @property
    def table(self):
        return self.underlying.table

    def __call__(self, a):
        return self.underlying(a)

    def after(self, other):
        return GroupHom(other.domain, self.codomain, self.underlying.after(other.underlying).table)

    def is_surjective(self):
        return self.underlying.is_surjective()

    def is_injective(self):
        return self.underlying.is_injective()

    def kernel_elements(self):
        return [a for a in self.domain.elements if self(a) == self.codomain.identity]


# --------------------- Constructors ------------------------


def cyclic_group(m, name=None):
    if m < 1:
        raise ValueError("Cyclic group order must be positive, got {}".format(m))
    elements = np.arange(m)
    return FinGroup((elements[:, None] + elements[None, :]) % m, name=name or "Z{}".format(m))


def direct_product(G, H, name=None):
    """Elements (g, h) are indexed by g·|H| + h."""
    n, k = len(G), len(H)
    pairs = [(g, h) for g in range(n) for h in range(k)]
    table = [[G.mul(g1, g2) * k + H.mul(h1, h2) for (g2, h2) in pairs] for (g1, h1) in pairs]
    labels = None
    if G.carrier.labels is not None or H.carrier.labels is not None:
        labels = ["({},{})".format(G.label(g), H.label(h)) for g, h in pairs]
    return FinGroup(table, labels=labels, name=name or "{}x{}".format(G.name, H.name))


def abelian_product(invariants, name=None):
    if len(invariants) == 0:
        return cyclic_group(1, name=name or "Z1")
    group = cyclic_group(invariants[0])
    for m in invariants[1:]:
        group = direct_product(group, cyclic_group(m))
    group.name = name or "x".join("Z{}".format(m) for m in invariants)
    return group


def dihedral_group(n, name=None):
    """Symmetries of the n-gon, order 2n; r^i s^a is indexed by i + n·a."""
    if n < 1:
        raise ValueError("Dihedral group needs n >= 1, got {}".format(n))
    elements = [(i, a) for a in range(2) for i in range(n)]

    def mul(x, y):
        (i, a), (k, b) = x, y
        return ((i + (-1) ** a * k) % n, (a + b) % 2)

    index = {x: j for j, x in enumerate(elements)}
    table = [[index[mul(x, y)] for y in elements] for x in elements]
    labels = ["r{}{}".format(i, "s" if a else "") for i, a in elements]
    return FinGroup(table, labels=labels, name=name or "D{}".format(n))


_QUATERNION_UNITS = ("1", "i", "j", "k")
# unit products as (negated, unit)
_QUATERNION_PRODUCTS = {
    ("i", "i"): (1, "1"), ("j", "j"): (1, "1"), ("k", "k"): (1, "1"),
    ("i", "j"): (0, "k"), ("j", "i"): (1, "k"),
    ("j", "k"): (0, "i"), ("k", "j"): (1, "i"),
    ("k", "i"): (0, "j"), ("i", "k"): (1, "j"),
}


def quaternion_group(name=None):
    elements = [(s, u) for s in range(2) for u in _QUATERNION_UNITS]

    def mul(x, y):
        (s, u), (t, v) = x, y
        if u == "1":
            negated, w = 0, v
        elif v == "1":
            negated, w = 0, u
        else:
            negated, w = _QUATERNION_PRODUCTS[(u, v)]
        return ((s + t + negated) % 2, w)

    index = {x: j for j, x in enumerate(elements)}
    table = [[index[mul(x, y)] for y in elements] for x in elements]
    labels = ["{}{}".format("-" if s else "", u) for s, u in elements]
    return FinGroup(table, labels=labels, name=name or "Q8")


def permutation_group(permutations, name=None):
    """The group of the given permutations (assumed closed) under composition (p∘q)(x) = p(q(x))."""
    permutations = sorted(tuple(p) for p in permutations)
    index = {p: j for j, p in enumerate(permutations)}
    table = [[index[tuple(p[x] for x in q)] for q in permutations] for p in permutations]
    labels = ["".join(str(x) for x in p) for p in permutations]
    return FinGroup(table, labels=labels, name=name)


def _is_even(p):
    inversions = sum(1 for i, j in itertools.combinations(range(len(p)), 2) if p[i] > p[j])
    return inversions % 2 == 0


def symmetric_group(k, name=None):
    return permutation_group(itertools.permutations(range(k)), name=name or "S{}".format(k))


def alternating_group(k, name=None):
    return permutation_group([p for p in itertools.permutations(range(k)) if _is_even(p)],
                             name=name or "A{}".format(k))


def group_from_json(data):
    kind = data.get("kind")
    if kind == "cayley":
        return FinGroup(data["table"], labels=data.get("labels"), name=data.get("name"))
    elif kind == "abelian_product":
        return abelian_product(data["invariants"], name=data.get("name"))
    elif kind == "cyclic":
        return cyclic_group(data["order"], name=data.get("name"))
    elif kind == "product":
        return abelian_product(data["factors"], name=data.get("name"))
    elif kind == "dihedral":
        return dihedral_group(data["n"], name=data.get("name"))
    elif kind == "quaternion":
        return quaternion_group(name=data.get("name"))
    elif kind == "symmetric":
        return symmetric_group(data["degree"], name=data.get("name"))
    elif kind == "alternating":
        return alternating_group(data["degree"], name=data.get("name"))
    elif kind == "catalog":
        from cubelab.models.groups.catalog import by_name
        return by_name(data["name"])
    else:
        raise ValueError("Invalid group kind {}".format(kind))
