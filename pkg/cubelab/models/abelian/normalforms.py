from sympy import Matrix
from sympy.core.intfunc import igcdex
from sympy.polys.matrices.normalforms import smith_normal_decomp, invariant_factors

from cubelab.models.abelian.matrix import IntMatrix


def _gcdex(a, b):
    # y == 0 whenever a divides b, which keeps the transform small
    x, y, g = igcdex(a, b)
    if a != 0 and b % a == 0:
        y = 0
        x = -1 if a < 0 else 1
    return x, y, g


def _add_columns(m, i, j, a, b, c, d):
    # replace m[:, i] by a*m[:, i] + b*m[:, j]
    # and m[:, j] by c*m[:, i] + d*m[:, j]
    for k in range(len(m)):
        e = m[k][i]
        m[k][i] = a * e + b * m[k][j]
        m[k][j] = c * e + d * m[k][j]


def _hermite(M):
    # H, U and the number of nonzero columns of H, which sit on the right
    m, n = M.shape
    A = [list(row) for row in M.entries]
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    k = n
    for i in range(m - 1, -1, -1):
        if k == 0:
            break
        k -= 1
        for j in range(k - 1, -1, -1):
            if A[i][j] != 0:
                u, v, d = _gcdex(A[i][k], A[i][j])
                r, s = A[i][k] // d, A[i][j] // d
                _add_columns(A, k, j, u, v, -s, r)
                _add_columns(U, k, j, u, v, -s, r)
        b = A[i][k]
        if b < 0:
            _add_columns(A, k, k, -1, 0, -1, 0)
            _add_columns(U, k, k, -1, 0, -1, 0)
            b = -b
        if b == 0:
            k += 1
        else:
            for j in range(k + 1, n):
                q = A[i][j] // b
                _add_columns(A, j, k, 1, -q, 0, 1)
                _add_columns(U, j, k, 1, -q, 0, 1)
    return IntMatrix(m, n, A), IntMatrix(n, n, U), n - k


def hnf(M):
    """
    Column Hermite normal form with its unimodular transform.

    Rows are processed bottom-up and pivots placed in the rightmost columns; pivots are positive and the entries to
    the right of a pivot are reduced modulo it. The nonzero columns of H, all on the right, are the canonical basis
    of the lattice spanned by the columns of M, and the remaining leading columns of U span its kernel.

    Parameters
    ----------
    M : IntMatrix

    Returns
    -------
    (IntMatrix, IntMatrix)
        H = M·U and the unimodular U.
    """
    H, U, _ = _hermite(M)
    return H, U


def hnf_basis(M):
    """Canonical basis (nonzero HNF columns) of the column span of M."""
    H, _, rank = _hermite(M)
    return H.select_columns(range(M.cols - rank, M.cols))


def kernel_basis(M):
    """Basis of {x : M·x = 0} as the columns of a cols x (cols - rank) matrix."""
    _, U, rank = _hermite(M)
    return U.select_columns(range(M.cols - rank))


def snf(M):
    """
    Smith normal form D = U·M·V with unimodular U, V.

    The diagonal of D is nonnegative and forms a divisibility chain; rows of U are negated where the
    decomposition produced a negative entry.

    Returns
    -------
    (IntMatrix, IntMatrix, IntMatrix)
    """
    rows, cols = M.shape
    if rows == 0 or cols == 0 or M.is_zero():
        return IntMatrix.zeros(rows, cols), IntMatrix.identity(rows), IntMatrix.identity(cols)
    D, U, V = (IntMatrix.from_domain(A) for A in smith_normal_decomp(M.to_domain()))
    signs = [-1 if i < cols and D[i, i] < 0 else 1 for i in range(rows)]
    D = IntMatrix(rows, cols, [[s * x for x in row] for s, row in zip(signs, D.entries)])
    U = IntMatrix(rows, rows, [[s * x for x in row] for s, row in zip(signs, U.entries)])
    return D, U, V


def smith_invariants(M):
    """Diagonal of the Smith normal form, nonnegative, as a divisibility chain."""
    if M.rows == 0 or M.cols == 0:
        return ()
    return tuple(abs(int(d)) for d in invariant_factors(M.to_domain()))


def solve_integer(B, v):
    """
    The unique integer x with B·x = v for a basis B of full column rank.

    Raises
    ------
    ValueError
        If v is not in the lattice spanned by the columns of B.
    """
    if B.cols == 0:
        if any(v):
            raise ValueError("Vector {} is not in the zero lattice".format(list(v)))
        return ()
    solution, params = Matrix(B.to_json()).gauss_jordan_solve(Matrix(list(v)))
    if params.shape[0] != 0:
        raise ValueError("Basis does not have full column rank")
    x = tuple(solution)
    if any(not c.is_integer for c in x):
        raise ValueError("Vector {} is not in the lattice".format(list(v)))
    return tuple(int(c) for c in x)
