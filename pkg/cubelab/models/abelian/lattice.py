import re

from cubelab.models.abelian.matrix import IntMatrix, hstack
from cubelab.models.abelian.normalforms import hnf_basis, kernel_basis, solve_integer


class IntLattice:
    """
    A subgroup of Z^d, identified by the canonical Hermite basis of its generators.

    Two values are equal iff their bases are identical, which is iff they are the same subgroup.
    """

    def __init__(self, ambient_rank, generators=()):
        if ambient_rank < 0:
            raise ValueError("Ambient rank must be non-negative, got {}".format(ambient_rank))
        if isinstance(generators, IntMatrix):
            M = generators
        else:
            M = IntMatrix.from_columns([tuple(g) for g in generators], ambient_rank)
        if M.rows != ambient_rank:
            raise ValueError("Generators live in Z^{}, expected Z^{}".format(M.rows, ambient_rank))
        self.ambient_rank = ambient_rank
        self.basis = hnf_basis(M)

    @classmethod
    def zero(cls, d):
        return cls(d)

    @classmethod
    def full(cls, d):
        return cls(d, IntMatrix.identity(d))

    def __eq__(self, other):
        return isinstance(other, IntLattice) and self.ambient_rank == other.ambient_rank and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_rank, self.basis))

    def __repr__(self):
        return "IntLattice({}, {})".format(self.ambient_rank, self.generators())

    def __contains__(self, vector):
        return self.contains(vector)

    def __le__(self, other):
        _check_rank(self, other)
        return all(other.contains(g) for g in self.generators())

    def __and__(self, other):
        return lattice_meet(self, other)

    def __or__(self, other):
        return lattice_join(self, other)

    @property
    def rank(self):
        return self.basis.cols

    def generators(self):
        return [list(c) for c in self.basis.columns()]

    def contains(self, vector):
        vector = tuple(int(x) for x in vector)
        if len(vector) != self.ambient_rank:
            raise ValueError("Vector of length {} is not in Z^{}".format(len(vector), self.ambient_rank))
        try:
            solve_integer(self.basis, vector)
        except ValueError:
            return False
        return True

    def coordinates(self, vector):
        """Coefficients of the vector in the canonical basis."""
        return solve_integer(self.basis, tuple(vector))

    def is_full(self):
        return self == IntLattice.full(self.ambient_rank)

    def is_zero(self):
        return self.rank == 0

    def index(self):
        """Index [Z^d : L], or None when L has lower rank."""
        if self.rank < self.ambient_rank:
            return None
        index = 1
        for i in range(self.ambient_rank):
            index *= self.basis[i, i]
        return abs(index)

    def to_json(self):
        return {"kind": "zlattice", "ambient_rank": self.ambient_rank, "generators": self.generators()}


def _check_rank(L1, L2):
    if L1.ambient_rank != L2.ambient_rank:
        raise ValueError("Ambient rank mismatch: {} vs {}".format(L1.ambient_rank, L2.ambient_rank))


def lattice_join(L1, L2):
    _check_rank(L1, L2)
    return IntLattice(L1.ambient_rank, hstack(L1.basis, L2.basis))


def lattice_meet(L1, L2):
    """Intersection via the kernel of [B1 | -B2]: (x, y) in the kernel gives B1·x in both lattices."""
    _check_rank(L1, L2)
    d = L1.ambient_rank
    if L1.rank == 0 or L2.rank == 0:
        return IntLattice.zero(d)
    K = kernel_basis(hstack(L1.basis, -L2.basis))
    X = K.select_rows(range(L1.rank))
    return IntLattice(d, L1.basis.matmul(X))


def lattice_image(M, L=None):
    """M·L as a lattice in Z^rows; the whole column span of M when L is omitted."""
    if L is None:
        return IntLattice(M.rows, M)
    return IntLattice(M.rows, M.matmul(L.basis))


def lattice_preimage(M, L):
    """{x in Z^cols : M·x in L}."""
    if M.rows != L.ambient_rank:
        raise ValueError("Matrix with {} rows cannot map into Z^{}".format(M.rows, L.ambient_rank))
    if M.cols == 0:
        return IntLattice.zero(0)
    K = kernel_basis(hstack(M, -L.basis)) if L.rank else kernel_basis(M)
    return IntLattice(M.cols, K.select_rows(range(M.cols)))


def lattice_meet_all(lattices, d):
    result = IntLattice.full(d)
    for L in lattices:
        result = lattice_meet(result, L)
    return result


def lattice_join_all(lattices, d):
    result = IntLattice.zero(d)
    for L in lattices:
        result = lattice_join(result, L)
    return result


# --------------------- Symbolic Z[a] generators ------------------------

_SYMBOLS = {
    "1": (1, 0),
    "a": (0, 1),
    "a^2": (-1, -1),
}
_TERM = re.compile(r"^([+-]?)(\d*)\*?(a\^2|a²|a|)$")


def complexes_embedding():
    """
    Additive embedding of Z[a] with 1 + a + a² = 0 into Z²: 1 -> (1, 0), a -> (0, 1), a² -> (-1, -1).
    """
    return dict(_SYMBOLS)


def parse_symbolic(expression):
    """
    Reads a linear combination such as "2a", "-a^2" or "3a+1" into its Z² vector.
    """
    text = str(expression).replace(" ", "")
    if not text:
        raise ValueError("Empty symbolic generator")
    terms = re.findall(r"[+-]?[^+-]+", text)
    if "".join(terms) != text:
        raise ValueError("Cannot parse symbolic generator '{}'".format(expression))
    x, y = 0, 0
    for term in terms:
        match = _TERM.match(term)
        if match is None:
            raise ValueError("Cannot parse term '{}' in '{}'".format(term, expression))
        sign, digits, symbol = match.groups()
        if not digits and not symbol:
            raise ValueError("Cannot parse term '{}' in '{}'".format(term, expression))
        coefficient = int(digits) if digits else 1
        if sign == "-":
            coefficient = -coefficient
        symbol = {"": "1", "a²": "a^2"}.get(symbol, symbol)
        vx, vy = _SYMBOLS[symbol]
        x += coefficient * vx
        y += coefficient * vy
    return (x, y)


def symbolic_lattice(*expressions):
    """The subgroup of Z² generated by symbolic elements, e.g. symbolic_lattice("2a")."""
    return IntLattice(2, [parse_symbolic(e) for e in expressions])
