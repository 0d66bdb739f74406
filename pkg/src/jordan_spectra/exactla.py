"""Exact dense linear algebra over field scalars.

Matrices are lists of lists whose entries are Fraction, Sqrt5, or int; all
routines use only field operations so any exact ordered field flows through.
Pivoting picks the first nonzero entry (exact arithmetic needs no magnitude
pivoting).
"""

from __future__ import annotations

from fractions import Fraction


def mat_vec(m, v):
    return [sum(mij * vj for mij, vj in zip(row, v)) for row in m]


def mat_mul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(m):
    return [list(row) for row in zip(*m)]


def rref(matrix):
    """Reduced row echelon form. Returns (rref_rows, pivot_column_list)."""
    rows = [list(r) for r in matrix]
    nrow = len(rows)
    ncol = len(rows[0]) if nrow else 0
    pivots = []
    r = 0
    for c in range(ncol):
        pivot_row = None
        for i in range(r, nrow):
            if rows[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(nrow):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrow:
            break
    return rows, pivots


def matrix_rank(matrix):
    if not matrix:
        return 0
    return len(rref(matrix)[1])


def solve_unique(a, b):
    """Solve the square system a x = b; raise ValueError if singular."""
    n = len(a)
    aug = [list(row) + [bv] for row, bv in zip(a, b)]
    rows, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("singular linear system")
    return [rows[i][n] for i in range(n)]


def solve_any(a, b):
    """One solution of a x = b (possibly underdetermined); None if none."""
    nrow = len(a)
    ncol = len(a[0]) if nrow else 0
    aug = [list(row) + [bv] for row, bv in zip(a, b)]
    rows, pivots = rref(aug)
    if ncol in pivots:
        return None
    x = [Fraction(0)] * ncol
    for r, c in enumerate(pivots):
        x[c] = rows[r][ncol]
    return x


def invert(a):
    n = len(a)
    aug = [list(row) + ident_row for row, ident_row in zip(a, identity(n))]
    rows, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("singular matrix")
    return [row[n:] for row in rows]


def determinant(a):
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    n = len(a)
    rows = [list(r) for r in a]
    det = Fraction(1)
    for c in range(n):
        pivot_row = None
        for i in range(c, n):
            if rows[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            return Fraction(0) * det
        if pivot_row != c:
            rows[c], rows[pivot_row] = rows[pivot_row], rows[c]
            det = -det
        det = det * rows[c][c]
        inv = 1 / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return det


def nullspace(a):
    """Basis of the right nullspace of a."""
    nrow = len(a)
    ncol = len(a[0]) if nrow else 0
    rows, pivots = rref(a)
    free = [c for c in range(ncol) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncol
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(v)
    return basis


def affinely_independent(points) -> bool:
    if not points:
        return True
    p0 = points[0]
    diffs = [[x - y for x, y in zip(p, p0)] for p in points[1:]]
    return matrix_rank(diffs) == len(points) - 1


def affine_rank(points) -> int:
    """Dimension of the affine hull of the point set."""
    if not points:
        return -1
    p0 = points[0]
    diffs = [[x - y for x, y in zip(p, p0)] for p in points[1:]]
    if not diffs:
        return 0
    return matrix_rank(diffs)


def affine_basis_indices(points):
    """Indices of a maximal affinely independent subset, greedily (lex order)."""
    chosen = []
    for i in range(len(points)):
        trial = chosen + [i]
        if affinely_independent([points[j] for j in trial]):
            chosen = trial
    return chosen


def affine_map_from_correspondence(src, dst):
    """The unique affine map sending each src point to its dst point.

    src must be affinely independent with len(src) = d+1 points in dimension
    d.  Returns (matrix, translation) with map(x) = matrix @ x + translation.
    """
    d = len(src[0])
    if len(src) != d + 1:
        raise ValueError("need d+1 source points for dimension %d" % d)
    # columns of [M | t] solve  [x ; 1] -> y  per coordinate
    a_rows = [list(p) + [Fraction(1)] for p in src]
    cols = []
    for coord in range(d):
        rhs = [q[coord] for q in dst]
        cols.append(solve_unique(a_rows, rhs))
    matrix = [[cols[i][j] for j in range(d)] for i in range(d)]
    translation = [cols[i][d] for i in range(d)]
    return matrix, translation


def barycentric_coordinates(vertices, point):
    """Coefficients lam with sum 1 and sum lam_i v_i = point.

    vertices must be affinely independent; None if point is outside their
    affine hull.
    """
    n = len(vertices)
    dim = len(point)
    a = [[vertices[j][i] for j in range(n)] for i in range(dim)]
    a.append([Fraction(1)] * n)
    b = list(point) + [Fraction(1)]
    return solve_any(a, b)
