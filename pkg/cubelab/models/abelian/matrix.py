from sympy import ZZ
from sympy.polys.matrices import DomainMatrix


class IntMatrix:
    """An immutable rows x cols matrix of arbitrary-precision integers."""

    def __init__(self, rows, cols, entries):
        entries = tuple(tuple(int(x) for x in row) for row in entries)
        if len(entries) != rows or any(len(row) != cols for row in entries):
            raise ValueError("Entries do not match the declared shape {}x{}".format(rows, cols))
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("Column count is required for a matrix without rows")
            cols = len(rows[0])
        return cls(len(rows), cols, rows)

    @classmethod
    def from_columns(cls, columns, rows):
        columns = [list(c) for c in columns]
        for c in columns:
            if len(c) != rows:
                raise ValueError("Column {} does not have {} entries".format(c, rows))
        return cls(rows, len(columns), [[c[i] for c in columns] for i in range(rows)])

    @classmethod
    def identity(cls, n):
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def diagonal(cls, values, rows=None, cols=None):
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        return cls(rows, cols, [[values[i] if i == j and i < len(values) else 0 for j in range(cols)]
                                for i in range(rows)])

    @classmethod
    def from_domain(cls, dm):
        rows, cols = dm.shape
        return cls(rows, cols, [[int(x) for x in row] for row in dm.to_list()]) if rows else cls.zeros(0, cols)

    def to_domain(self):
        return DomainMatrix([[ZZ(x) for x in row] for row in self.entries], (self.rows, self.cols), ZZ)

    @property
    def shape(self):
        return self.rows, self.cols

    def __getitem__(self, index):
        i, j = index
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return "IntMatrix({})".format([list(r) for r in self.entries])

    def __neg__(self):
        return IntMatrix(self.rows, self.cols, [[-x for x in row] for row in self.entries])

    def __add__(self, other):
        self._check_shape(other)
        return IntMatrix(self.rows, self.cols,
                         [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other):
        return self.matmul(other)

    def _check_shape(self, other):
        if self.shape != other.shape:
            raise ValueError("Shape mismatch: {} vs {}".format(self.shape, other.shape))

    def matmul(self, other):
        if self.cols != other.rows:
            raise ValueError("Cannot multiply {} by {}".format(self.shape, other.shape))
        columns = other.columns()
        return IntMatrix(self.rows, other.cols,
                         [[sum(a * b for a, b in zip(row, col)) for col in columns] for row in self.entries])

    def apply(self, vector):
        if len(vector) != self.cols:
            raise ValueError("Vector of length {} does not fit {} columns".format(len(vector), self.cols))
        return tuple(sum(a * b for a, b in zip(row, vector)) for row in self.entries)

    def column(self, j):
        return tuple(row[j] for row in self.entries)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def row(self, i):
        return self.entries[i]

    def transpose(self):
        return IntMatrix(self.cols, self.rows, self.columns())

    def select_columns(self, indices):
        return IntMatrix.from_columns([self.column(j) for j in indices], self.rows)

    def select_rows(self, indices):
        return IntMatrix(len(indices), self.cols, [self.entries[i] for i in indices])

    def is_zero(self):
        return all(x == 0 for row in self.entries for x in row)

    def to_json(self):
        return [list(row) for row in self.entries]


def hstack(*matrices):
    rows = matrices[0].rows
    for m in matrices:
        if m.rows != rows:
            raise ValueError("Cannot stack matrices with {} and {} rows".format(rows, m.rows))
    columns = [c for m in matrices for c in m.columns()]
    return IntMatrix.from_columns(columns, rows)


def vstack(*matrices):
    cols = matrices[0].cols
    for m in matrices:
        if m.cols != cols:
            raise ValueError("Cannot stack matrices with {} and {} columns".format(cols, m.cols))
    return IntMatrix(sum(m.rows for m in matrices), cols, [row for m in matrices for row in m.entries])


def block_diag(*matrices):
    rows = sum(m.rows for m in matrices)
    cols = sum(m.cols for m in matrices)
    entries = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for m in matrices:
        for i, row in enumerate(m.entries):
            entries[r0 + i][c0:c0 + m.cols] = row
        r0 += m.rows
        c0 += m.cols
    return IntMatrix(rows, cols, entries)
