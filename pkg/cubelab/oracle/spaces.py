import abc
import itertools

from cubelab.environment.instance import Instance
from cubelab.environment.initializers import RandBoundsInitializer, CaseListInitializer
from cubelab.models.groups.catalog import catalog
from cubelab.models.groups.normal import enumerate_normal_subgroups
from cubelab.models.abelian.fgab import FgAbGroup
from cubelab.models.abelian.lattice import IntLattice
from cubelab.cubes.contexts import GroupContext, AbelianContext


class InstanceSpace(abc.ABC):
    """A space of instances with n relations to search through."""

    exhaustive = True

    def __init__(self, n):
        if n < 1:
            raise ValueError("Tuple size must be positive, got {}".format(n))
        self.n = n

    @abc.abstractmethod
    def instances(self, rng):
        """Yields Instance values in a fixed order; randomised spaces draw from ``rng`` only."""
        raise NotImplementedError


class GroupSpace(InstanceSpace):
    """Catalog groups up to an order bound with every n-multiset of their normal subgroups."""

    def __init__(self, n, max_order=8):
        super().__init__(n)
        if max_order < 1:
            raise ValueError("Order bound must be positive, got {}".format(max_order))
        self.max_order = max_order

    def instances(self, rng):
        context = GroupContext()
        for G in catalog(self.max_order):
            normals = enumerate_normal_subgroups(G)
            for combo in itertools.combinations_with_replacement(range(len(normals)), self.n):
                yield Instance(context, G, [normals[i] for i in combo], name="{}:{}".format(G.name, list(combo)))


class CyclicSpace(InstanceSpace):
    """Z/m for m up to a bound with every n-multiset of its subgroups dZ/mZ, d | m."""

    def __init__(self, n, max_modulus=60):
        super().__init__(n)
        if max_modulus < 1:
            raise ValueError("Modulus bound must be positive, got {}".format(max_modulus))
        self.max_modulus = max_modulus

    def instances(self, rng):
        context = AbelianContext()
        for m in range(1, self.max_modulus + 1):
            X = FgAbGroup.cyclic(m)
            divisors = [d for d in range(1, m + 1) if m % d == 0]
            for combo in itertools.combinations_with_replacement(divisors, self.n):
                relations = [IntLattice(1, [[d]]) for d in combo]
                yield Instance(context, X, relations, name="Z{}:{}".format(m, list(combo)))


class ZLatticeSpace(InstanceSpace):
    """Random n-tuples of subgroups of Z^rank, each spanned by a few vectors with entries in [-bound, bound]."""

    exhaustive = False

    def __init__(self, n, rank=2, bound=6, generators=1, budget=1000):
        super().__init__(n)
        if rank < 1 or bound < 1 or generators < 1 or budget < 1:
            raise ValueError("Lattice space bounds must be positive")
        self.rank = rank
        self.bound = bound
        self.generators = generators
        self.budget = budget

    def instances(self, rng):
        context = AbelianContext()
        X = FgAbGroup.free(self.rank)
        entries = RandBoundsInitializer({"x{}".format(r): [-self.bound, self.bound] for r in range(self.rank)}, rng=rng)
        for k in range(self.budget):
            relations = []
            for _ in range(self.n):
                vectors = []
                for _ in range(self.generators):
                    params = entries.initialize()
                    vectors.append([params["x{}".format(r)] for r in range(self.rank)])
                relations.append(IntLattice(self.rank, vectors))
            yield Instance(context, X, relations, name="zlattice:{}".format(k))


class CaseSpace(InstanceSpace):
    """An explicit list of instance documents, in order."""

    def __init__(self, n, cases):
        super().__init__(n)
        self.cases = cases

    def instances(self, rng):
        from cubelab.cubes.io import instance_from_dict

        initializer = CaseListInitializer({"case_list": self.cases, "sequential": True}, rng=rng)
        for _ in range(len(self.cases)):
            yield instance_from_dict(initializer.initialize())
