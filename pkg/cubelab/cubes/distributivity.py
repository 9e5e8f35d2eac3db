import itertools

from sympy.utilities.iterables import multiset_partitions

from cubelab.environment.report import CheckReport
from cubelab.cubes.contexts import lattice_for


class DistributivityFamily:
    """Pairwise disjoint nonempty index sets J_0, ..., J_k with k ≥ 1."""

    def __init__(self, blocks):
        blocks = tuple(tuple(sorted(int(j) for j in block)) for block in blocks)
        if len(blocks) < 2:
            raise ValueError("A distributivity family needs at least two index sets, got {}".format(len(blocks)))
        seen = set()
        for block in blocks:
            if not block:
                raise ValueError("Index sets of a distributivity family must be nonempty")
            if seen.intersection(block):
                raise ValueError("Index sets {} are not pairwise disjoint".format([list(b) for b in blocks]))
            seen.update(block)
        self.blocks = blocks

    def __eq__(self, other):
        return isinstance(other, DistributivityFamily) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        return "DistributivityFamily({})".format([list(b) for b in self.blocks])

    @property
    def head(self):
        return self.blocks[0]

    @property
    def tail(self):
        return self.blocks[1:]

    @property
    def support(self):
        return tuple(sorted(j for block in self.blocks for j in block))

    def to_json(self):
        return {"J": [list(b) for b in self.blocks]}


def enumerate_families(n):
    """
    Every distributivity family over {0, ..., n-1}: by support size, then by set partition of the support, then by
    the choice of J_0 with the remaining blocks in partition order.
    """
    for size in range(2, n + 1):
        for support in itertools.combinations(range(n), size):
            for parts in range(2, size + 1):
                for partition in multiset_partitions(list(support), parts):
                    for head in range(parts):
                        rest = [block for i, block in enumerate(partition) if i != head]
                        yield DistributivityFamily([partition[head]] + rest)


def evaluate_family(relations, family, lattice):
    """
    Both sides of (⋀_{J_0} R) ∧ ⋁_i (⋀_{J_i} R) = ⋁_i (⋀_{J_0 ∪ J_i} R).
    """
    def meet_over(indices):
        return lattice.meet_all([relations[j] for j in indices])

    head = meet_over(family.head)
    left = lattice.meet(head, lattice.join_all([meet_over(J) for J in family.tail]))
    right = lattice.join_all([meet_over(family.head + J) for J in family.tail])
    return left, right


def check_distributive(relations, lattice=None):
    """
    Checks the distributivity condition over every family for the given tuple.

    Parameters
    ----------
    relations : list
        Lattice elements on one object: EqRels, normal subgroups or subgroup lattices
    lattice : Lattice, optional
        Meet and join to use; inferred from the first element by default

    Returns
    -------
    CheckReport
        The witness is the first failing family with both sides; the trace lists every family and its outcome.
    """
    relations = list(relations)
    if not relations:
        raise ValueError("Distributivity needs at least one relation")
    lattice = lattice_for(relations[0]) if lattice is None else lattice
    trace = []
    witness = None
    for family in enumerate_families(len(relations)):
        left, right = evaluate_family(relations, family, lattice)
        holds = left == right
        trace.append({"family": family.to_json()["J"], "holds": holds})
        if not holds and witness is None:
            witness = {
                "family": family.to_json()["J"],
                "left": lattice.describe(left),
                "right": lattice.describe(right),
            }
    if witness is None:
        return CheckReport.passed(trace=trace)
    return CheckReport.failed(witness, trace=trace)


def failing_families(report):
    return [entry["family"] for entry in report.trace if "family" in entry and not entry["holds"]]
