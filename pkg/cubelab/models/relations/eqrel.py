import itertools
from collections import defaultdict

from cubelab.models.relations.finset import FinSet, FinMap


class UnionFind:
    def __init__(self, X):
        self.parent = {x: x for x in X}
        self.rank = {x: 0 for x in X}
        self.size = {x: 1 for x in X}

    def find(self, x):
        y = self.parent[x]
        if self.parent[y] != y:
            y = self.parent[x] = self.find(y)
        return y

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x
        self.size[x] += self.size[y]
        del self.rank[y]

    def reps(self):
        return set(self.rank)

    def __len__(self):
        return len(self.reps())

    def classes(self):
        classes = defaultdict(list)
        for x in self.parent:
            classes[self.find(x)].append(x)
        return list(classes.values())


def _check_carriers(R, S):
    if R.carrier.size != S.carrier.size:
        raise ValueError("Carrier mismatch: {} vs {}".format(R.carrier.size, S.carrier.size))


class EqRel:
    """
    An equivalence relation on a finite carrier, stored as a partition.

    Blocks are kept in canonical form (sorted within, ordered by least element), so two values are equal iff they
    describe the same partition.
    """

    def __init__(self, carrier, blocks):
        if isinstance(carrier, int):
            carrier = FinSet(carrier)
        blocks = tuple(sorted(tuple(sorted(int(x) for x in block)) for block in blocks))
        labels = [None] * carrier.size
        for i, block in enumerate(blocks):
            if len(block) == 0:
                raise ValueError("EqRel blocks must be nonempty")
            for x in block:
                if not 0 <= x < carrier.size:
                    raise ValueError("Element {} outside carrier of size {}".format(x, carrier.size))
                if labels[x] is not None:
                    raise ValueError("Element {} appears in two blocks".format(x))
                labels[x] = i
        if None in labels:
            raise ValueError("Blocks do not cover the carrier: missing {}".format(labels.index(None)))
        self.carrier = carrier
        self.blocks = blocks
        self.labels = tuple(labels)

    @classmethod
    def discrete(cls, carrier):
        if isinstance(carrier, int):
            carrier = FinSet(carrier)
        return cls(carrier, [[x] for x in carrier])

    @classmethod
    def full(cls, carrier):
        if isinstance(carrier, int):
            carrier = FinSet(carrier)
        return cls(carrier, [list(carrier)] if carrier.size else [])

    @classmethod
    def from_labels(cls, carrier, labels):
        if isinstance(carrier, int):
            carrier = FinSet(carrier)
        blocks = defaultdict(list)
        for x, label in enumerate(labels):
            blocks[label].append(x)
        return cls(carrier, blocks.values())

    @classmethod
    def generated_by(cls, carrier, pairs):
        """Equivalence closure of a set of pairs."""
        if isinstance(carrier, int):
            carrier = FinSet(carrier)
        uf = UnionFind(range(carrier.size))
        for x, y in pairs:
            uf.union(x, y)
        return cls(carrier, uf.classes())

    def __eq__(self, other):
        return isinstance(other, EqRel) and self.carrier.size == other.carrier.size and self.blocks == other.blocks

    def __hash__(self):
        return hash((self.carrier.size, self.blocks))

    def __repr__(self):
        return "EqRel({})".format([list(b) for b in self.blocks])

    def __le__(self, other):
        _check_carriers(self, other)
        return all(other.labels[b[0]] == other.labels[x] for b in self.blocks for x in b)

    def __and__(self, other):
        return meet_rel(self, other)

    def __or__(self, other):
        return join_rel(self, other)

    def relates(self, x, y):
        return self.labels[x] == self.labels[y]

    def block_of(self, x):
        return self.blocks[self.labels[x]]

    def pairs(self):
        return frozenset((x, y) for block in self.blocks for x in block for y in block)

    def num_pairs(self):
        return sum(len(b) ** 2 for b in self.blocks)

    def is_discrete(self):
        return len(self.blocks) == self.carrier.size

    def is_full(self):
        return len(self.blocks) <= 1

    def to_relation(self):
        return BinaryRelation(self.carrier, self.pairs())

    def to_json(self):
        return {"carrier": self.carrier.to_json(), "blocks": [list(b) for b in self.blocks]}

    @classmethod
    def from_json(cls, data):
        return cls(FinSet.from_json(data["carrier"]), data["blocks"])


class BinaryRelation:
    """An explicit set of pairs on a finite carrier; composites of equivalence relations land here."""

    def __init__(self, carrier, pairs):
        if isinstance(carrier, int):
            carrier = FinSet(carrier)
        pairs = frozenset((int(x), int(y)) for x, y in pairs)
        for x, y in pairs:
            if not (0 <= x < carrier.size and 0 <= y < carrier.size):
                raise ValueError("Pair {} outside carrier of size {}".format((x, y), carrier.size))
        self.carrier = carrier
        self.pairs = pairs

    def __eq__(self, other):
        return isinstance(other, BinaryRelation) and self.carrier.size == other.carrier.size \
            and self.pairs == other.pairs

    def __hash__(self):
        return hash((self.carrier.size, self.pairs))

    def __contains__(self, pair):
        return pair in self.pairs

    def __len__(self):
        return len(self.pairs)

    def __repr__(self):
        return "BinaryRelation({})".format(sorted(self.pairs))

    def compose(self, other):
        """{(x, z) : x self y and y other z}."""
        if self.carrier.size != other.carrier.size:
            raise ValueError("Carrier mismatch: {} vs {}".format(self.carrier.size, other.carrier.size))
        successors = defaultdict(set)
        for y, z in other.pairs:
            successors[y].add(z)
        return BinaryRelation(self.carrier, ((x, z) for x, y in self.pairs for z in successors[y]))

    def inverse(self):
        return BinaryRelation(self.carrier, ((y, x) for x, y in self.pairs))

    def is_reflexive(self):
        return all((x, x) in self.pairs for x in self.carrier)

    def is_symmetric(self):
        return all((y, x) in self.pairs for x, y in self.pairs)

    def is_transitive(self):
        return self.compose(self).pairs <= self.pairs

    def is_equivalence(self):
        return self.is_reflexive() and self.is_symmetric() and self.is_transitive()

    def to_eqrel(self):
        if not self.is_equivalence():
            raise ValueError("Relation is not an equivalence relation")
        return EqRel.generated_by(self.carrier, self.pairs)


def compose_rel(R, S):
    """
    Relational composite R∘S = {(x, z) : x R y and y S z for some y}.

    Parameters
    ----------
    R : EqRel
    S : EqRel
        Equivalence relations on a shared carrier.

    Returns
    -------
    BinaryRelation
        The composite as an explicit pair set, which need not be an equivalence relation.
    """
    _check_carriers(R, S)
    pairs = set()
    for block in R.blocks:
        reach = set()
        for label in {S.labels[y] for y in block}:
            reach.update(S.blocks[label])
        pairs.update((x, z) for x in block for z in reach)
    return BinaryRelation(R.carrier, pairs)


def is_permutable(R, S):
    return compose_rel(R, S) == compose_rel(S, R)


def meet_rel(R, S):
    _check_carriers(R, S)
    return EqRel.from_labels(R.carrier, list(zip(R.labels, S.labels)))


def join_rel(R, S):
    _check_carriers(R, S)
    uf = UnionFind(range(R.carrier.size))
    for block in itertools.chain(R.blocks, S.blocks):
        for y in block[1:]:
            uf.union(block[0], y)
    return EqRel(R.carrier, uf.classes())


def meet_all(relations, carrier):
    result = EqRel.full(carrier)
    for R in relations:
        result = meet_rel(result, R)
    return result


def join_all(relations, carrier):
    result = EqRel.discrete(carrier)
    for R in relations:
        result = join_rel(result, R)
    return result


def kernel_pair(f):
    return EqRel.from_labels(f.domain, f.table)


def coequaliser(R):
    return FinMap(R.carrier, FinSet(len(R.blocks)), R.labels)


def all_partitions(carrier):
    """Yields every EqRel on the carrier."""
    if isinstance(carrier, int):
        carrier = FinSet(carrier)
    for classes in _all_classes(carrier.size):
        yield EqRel(carrier, classes)


def _all_classes(num_nodes):
    if num_nodes == 0:
        yield ()
    else:
        x = (num_nodes - 1,)
        for rec_classes in _all_classes(num_nodes - 1):
            yield rec_classes + (x,)
            for i, c in enumerate(rec_classes):
                yield rec_classes[:i] + (c + x,) + rec_classes[i + 1:]
