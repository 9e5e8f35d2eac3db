from cubelab.models.abelian.matrix import IntMatrix, hstack, vstack, block_diag
from cubelab.models.abelian.normalforms import smith_invariants, solve_integer
from cubelab.models.abelian.lattice import IntLattice, lattice_join, lattice_image, lattice_preimage


class FgAbGroup:
    """
    A finitely generated abelian group Z^rank / L, where L is the column span of the presentation matrix.

    Parameters
    ----------
    presentation : IntMatrix or list of rows
        rank x r matrix whose columns are the relations
    rank : int, optional
        Number of generators; required when the presentation has no rows to infer it from
    """

    def __init__(self, presentation=(), rank=None):
        if not isinstance(presentation, IntMatrix):
            rows = [list(r) for r in presentation]
            if rank is None:
                rank = len(rows)
            if not rows:
                presentation = IntMatrix.zeros(rank, 0)
            elif len(rows) != rank:
                raise ValueError("Presentation has {} rows, expected {}".format(len(rows), rank))
            else:
                presentation = IntMatrix.from_rows(rows)
        elif rank is not None and rank != presentation.rows:
            raise ValueError("Presentation has {} rows, expected {}".format(presentation.rows, rank))
        self.rank = presentation.rows
        self.relations = IntLattice(self.rank, presentation)

        torsion = [d for d in smith_invariants(self.relations.basis) if d != 1]
        self.invariants = tuple(torsion) + (0,) * (self.rank - self.relations.rank)

    @classmethod
    def free(cls, rank):
        return cls(IntMatrix.zeros(rank, 0))

    @classmethod
    def cyclic(cls, m):
        """Z/m, or Z when m == 0."""
        return cls(IntMatrix(1, 1, [[m]]) if m else IntMatrix.zeros(1, 0))

    @classmethod
    def from_invariants(cls, invariants):
        return cls(IntMatrix.diagonal([d for d in invariants], len(invariants), len(invariants)))

    def __eq__(self, other):
        return isinstance(other, FgAbGroup) and self.invariants == other.invariants

    def __hash__(self):
        return hash(self.invariants)

    def __repr__(self):
        return "FgAbGroup({})".format(list(self.invariants))

    @property
    def presentation(self):
        return self.relations.basis

    @property
    def free_rank(self):
        return self.invariants.count(0)

    def order(self):
        """Number of elements, or None if the group is infinite."""
        if self.free_rank:
            return None
        order = 1
        for d in self.invariants:
            order *= d
        return order

    def is_trivial(self):
        return self.invariants == ()

    def same_presentation(self, other):
        return self.rank == other.rank and self.relations == other.relations

    def is_zero_element(self, vector):
        return self.relations.contains(vector)

    def to_json(self):
        return {"kind": "fgab", "rank": self.rank, "presentation": self.presentation.to_json()}

    @classmethod
    def from_json(cls, data):
        return cls(data.get("presentation", ()), rank=data.get("rank"))


def direct_sum(A, B):
    return FgAbGroup(block_diag(A.presentation, B.presentation))


class FgAbHom:
    """A homomorphism given by the images of the domain generators, as the columns of ``matrix``."""

    def __init__(self, domain, codomain, matrix):
        if not isinstance(matrix, IntMatrix):
            matrix = IntMatrix(codomain.rank, domain.rank, matrix)
        if matrix.shape != (codomain.rank, domain.rank):
            raise ValueError("Matrix shape {} does not fit {} -> {} generators"
                             .format(matrix.shape, domain.rank, codomain.rank))
        for relation in domain.presentation.columns():
            if not codomain.relations.contains(matrix.apply(relation)):
                raise ValueError("Hom is not well defined: relation {} is not sent to zero".format(list(relation)))
        self.domain = domain
        self.codomain = codomain
        self.matrix = matrix

    @classmethod
    def identity(cls, A):
        return cls(A, A, IntMatrix.identity(A.rank))

    @classmethod
    def zero(cls, A, B):
        return cls(A, B, IntMatrix.zeros(B.rank, A.rank))

    def __call__(self, vector):
        return self.matrix.apply(vector)

    def __eq__(self, other):
        return isinstance(other, FgAbHom) and self.equals(other)

    def __hash__(self):
        return hash((self.domain.rank, self.codomain.rank))

    def __repr__(self):
        return "FgAbHom({})".format(self.matrix.to_json())

    def after(self, other):
        """Composite self∘other."""
        if not other.codomain.same_presentation(self.domain):
            raise ValueError("Cannot compose: codomain and domain presentations differ")
        return FgAbHom(other.domain, self.codomain, self.matrix.matmul(other.matrix))

    def compose(self, other):
        return self.after(other)

    def equals(self, other):
        """Generator-wise equality modulo the codomain relations."""
        if self.matrix.shape != other.matrix.shape or not self.codomain.same_presentation(other.codomain):
            return False
        difference = self.matrix - other.matrix
        return all(self.codomain.relations.contains(c) for c in difference.columns())

    def is_zero(self):
        return all(self.codomain.relations.contains(c) for c in self.matrix.columns())

    def image_lattice(self):
        """The image as a lattice in Z^codomain.rank containing the codomain relations."""
        return lattice_join(lattice_image(self.matrix), self.codomain.relations)

    def preimage_lattice(self, target=None):
        """Preimage of a subgroup (by default the trivial one, giving the kernel) of the codomain."""
        target = self.codomain.relations if target is None else target
        return lattice_preimage(self.matrix, target)

    def unreached_generator(self):
        """A codomain generator outside the image, or None when surjective."""
        image = self.image_lattice()
        for j in range(self.codomain.rank):
            unit = tuple(1 if i == j else 0 for i in range(self.codomain.rank))
            if not image.contains(unit):
                return j
        return None

    def to_json(self):
        return {"matrix": self.matrix.to_json(), "dom": self.domain.to_json(), "cod": self.codomain.to_json()}

    @classmethod
    def from_json(cls, data):
        domain, codomain = FgAbGroup.from_json(data["dom"]), FgAbGroup.from_json(data["cod"])
        if not data["matrix"]:
            return cls.zero(domain, codomain)
        return cls(domain, codomain, IntMatrix(codomain.rank, domain.rank, data["matrix"]))


class AbSubquotient:
    """
    M/D for lattices L ≤ D ≤ M of Z^g, where X = Z^g/L.

    The generators of ``group`` are the canonical basis columns of M.
    """

    def __init__(self, X, M, D):
        if not (X.relations <= D and D <= M):
            raise ValueError("Subquotient requires relations ≤ D ≤ M")
        coordinates = [solve_integer(M.basis, d) for d in D.basis.columns()]
        self.X = X
        self.M = M
        self.D = D
        self.group = FgAbGroup(IntMatrix.from_columns(coordinates, M.rank))

    @property
    def basis(self):
        return self.M.basis

    def induced_map(self, target):
        """m + D -> m + D' into a subquotient M'/D' with M ≤ M' and D ≤ D'."""
        if not (self.M <= target.M and self.D <= target.D):
            raise ValueError("No induced map between these subquotients")
        columns = [solve_integer(target.M.basis, m) for m in self.M.basis.columns()]
        return FgAbHom(self.group, target.group, IntMatrix.from_columns(columns, target.M.rank))

    def to_json(self):
        return {"numerator": self.M.to_json(), "denominator": self.D.to_json(), "invariants": list(self.group.invariants)}


def subquotient(X, M, D):
    return AbSubquotient(X, M, D)


def hom_kernel(f):
    """
    Kernel object and its inclusion; the kernel is presented on the canonical basis of the preimage lattice.
    """
    P = f.preimage_lattice()
    sq = AbSubquotient(f.domain, P, f.domain.relations)
    return sq.group, FgAbHom(sq.group, f.domain, P.basis)


def hom_cokernel(f):
    C = FgAbGroup(hstack(f.codomain.presentation, f.matrix))
    return C, FgAbHom(f.codomain, C, IntMatrix.identity(f.codomain.rank))


def _injections(A, B):
    S = direct_sum(A, B)
    i1 = FgAbHom(A, S, vstack(IntMatrix.identity(A.rank), IntMatrix.zeros(B.rank, A.rank)))
    i2 = FgAbHom(B, S, vstack(IntMatrix.zeros(A.rank, B.rank), IntMatrix.identity(B.rank)))
    return S, i1, i2


def pullback_ab(f, g):
    """
    Pullback of a cospan A --f--> C <--g-- B as the kernel of (a, b) -> f(a) - g(b).

    Returns
    -------
    (FgAbGroup, FgAbHom, FgAbHom)
        The pullback and its projections to A and B.
    """
    if not f.codomain.same_presentation(g.codomain):
        raise ValueError("Pullback requires a shared codomain")
    A, B = f.domain, g.domain
    S = direct_sum(A, B)
    difference = FgAbHom(S, f.codomain, hstack(f.matrix, -g.matrix))
    P, k = hom_kernel(difference)
    top = IntMatrix.identity(A.rank + B.rank)
    p1 = FgAbHom(P, A, top.select_rows(range(A.rank)).matmul(k.matrix))
    p2 = FgAbHom(P, B, top.select_rows(range(A.rank, A.rank + B.rank)).matmul(k.matrix))
    return P, p1, p2


def pair_into_pullback_ab(p1, p2, a, b):
    """The universal map <a, b>: T -> P for a pullback P with projections p1, p2."""
    basis = vstack(p1.matrix, p2.matrix)
    target = vstack(a.matrix, b.matrix)
    columns = []
    for j, v in enumerate(target.columns()):
        try:
            columns.append(solve_integer(basis, v))
        except ValueError:
            raise ValueError("Maps do not factor through the pullback at generator {}".format(j))
    return FgAbHom(a.domain, p1.domain, IntMatrix.from_columns(columns, basis.cols))


def pushout_ab(f, g):
    """
    Pushout of a span B <--f-- A --g--> C as the cokernel of a -> (f(a), -g(a)).

    Returns
    -------
    (FgAbGroup, FgAbHom, FgAbHom)
        The pushout and its legs from B and C.
    """
    if not f.domain.same_presentation(g.domain):
        raise ValueError("Pushout requires a shared domain")
    S, i1, i2 = _injections(f.codomain, g.codomain)
    h = FgAbHom(f.domain, S, vstack(f.matrix, -g.matrix))
    Q, q = hom_cokernel(h)
    return Q, q.after(i1), q.after(i2)


def is_surjective_ab(f):
    """Surjective iff [f | codomain relations] has Smith form with rank-many unit invariants."""
    invariants = smith_invariants(hstack(f.matrix, f.codomain.presentation))
    return len(invariants) == f.codomain.rank and all(d == 1 for d in invariants[:f.codomain.rank])


def is_injective_ab(f):
    return f.preimage_lattice() == f.domain.relations


def image_is_kernel(m, p):
    """Exactness at the middle of A --m--> B --p--> C."""
    return m.image_lattice() == p.preimage_lattice()
