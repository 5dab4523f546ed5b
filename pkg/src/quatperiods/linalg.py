"""Exact linear algebra over Q plus integer-lattice utilities.

Matrices are dense row-major ``list[list]`` of ints or Fractions; vectors are
flat lists/tuples. Row vectors act on the left (``x @ M``), which is the
convention used throughout the package. Nothing here rounds: every routine is
exact, and the lattice routines raise rather than silently degrade.
"""

from __future__ import annotations

from fractions import Fraction
from math import ceil, floor, isqrt


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(m):
    return [list(col) for col in zip(*m)]


def mat_mul(a, b):
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def vec_mat(v, m):
    """Row vector times matrix."""
    if len(v) != len(m):
        raise ValueError("dimension mismatch in vec_mat")
    ncols = len(m[0])
    return [sum(v[i] * m[i][j] for i in range(len(v))) for j in range(ncols)]


def mat_fraction(m):
    return [[Fraction(x) for x in row] for row in m]


def rref(m):
    """Reduced row echelon form over Q.

    Returns ``(rows, pivots)`` where ``pivots`` lists the pivot column of each
    nonzero row.
    """
    rows = mat_fraction(m)
    nrows, ncols = len(rows), len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        rows[r] = [x / piv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rank(m):
    return len(rref(m)[1])


def det(m):
    """Determinant over Q (fraction Gaussian elimination)."""
    rows = mat_fraction(m)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("det needs a square matrix")
    sign = 1
    d = Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            rows[c], rows[pr] = rows[pr], rows[c]
            sign = -sign
        piv = rows[c][c]
        d *= piv
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] / piv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return sign * d


def mat_inv(m):
    """Inverse over Q; raises ValueError on a singular matrix."""
    n = len(m)
    aug = [list(map(Fraction, row)) + ident_row for row, ident_row in
           zip(m, ([Fraction(int(i == j)) for j in range(n)] for i in range(n)))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def rational_kernel(m):
    """Basis of the right null space {x : m x = 0}, as lists of Fractions.

    Empty list when the kernel is trivial. The basis is the standard one read
    off the RREF (one vector per free column); it is not canonicalized further.
    """
    nrows, ncols = len(m), len(m[0])
    red, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def row_lattice_hnf(rows):
    """Hermite normal form of the integer row lattice spanned by ``rows``.

    Upper-triangular convention: pivots are positive and step strictly right;
    entries above a pivot are reduced into [0, pivot). Zero rows are dropped,
    so the result is a basis of the lattice.
    """
    work = [[int(x) for x in r] for r in rows]
    if not work:
        return []
    ncols = len(work[0])
    if any(len(r) != ncols for r in work):
        raise ValueError("ragged matrix")
    nrows = len(work)
    pr = 0
    for c in range(ncols):
        if pr == nrows:
            break
        # gcd-eliminate everything below the pivot row in this column
        for r in range(pr + 1, nrows):
            a, b = work[pr][c], work[r][c]
            if b == 0:
                continue
            if a == 0:
                work[pr], work[r] = work[r], work[pr]
                continue
            g, x, y = _xgcd(a, b)
            ag, bg = a // g, b // g
            rp, rr = work[pr], work[r]
            for jj in range(ncols):
                u, v = rp[jj], rr[jj]
                rp[jj] = x * u + y * v
                rr[jj] = -bg * u + ag * v
        if work[pr][c] == 0:
            continue
        if work[pr][c] < 0:
            work[pr] = [-x for x in work[pr]]
        piv = work[pr][c]
        for r in range(pr):
            q = work[r][c] // piv
            if q:
                work[r] = [u - q * v for u, v in zip(work[r], work[pr])]
        pr += 1
    return [r for r in work[:pr]]


def hermite_normal_form(m):
    """HNF of a full-row-rank integer matrix; raises on rank deficiency."""
    h = row_lattice_hnf(m)
    if len(h) != len(m):
        raise ValueError("matrix does not have full row rank")
    return h


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    g, r = a, b
    while r:
        q = g // r
        g, r = r, g - q * r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return g, x0, y0


def solve_rational(basis, v):
    """Rational coordinates c with c * basis == v, or None if v is outside
    the row span. Raises on dimension mismatch or a dependent basis."""
    k = len(basis)
    if len(v) != len(basis[0]):
        raise ValueError("dimension mismatch in solve")
    # solve basis^T c^T = v^T
    aug = [[Fraction(basis[i][j]) for i in range(k)] + [Fraction(v[j])]
           for j in range(len(v))]
    red, pivots = rref(aug)
    if k in pivots:
        return None  # inconsistent: v not in the span
    if pivots != list(range(k)):
        raise ValueError("basis rows are linearly dependent")
    coords = [Fraction(0)] * k
    for r, pc in enumerate(pivots):
        coords[pc] = red[r][k]
    return coords


def solve_integral(basis, v):
    """Integer coordinates c with c * basis == v, or None.

    ``basis`` spans a full-rank lattice (rows); None means v is not in it.
    """
    coords = solve_rational(basis, v)
    if coords is None or any(c.denominator != 1 for c in coords):
        return None
    return tuple(int(c) for c in coords)


def lattices_equal(basis_a, basis_b):
    """Same row lattice? Mutual membership of generators; convention-free."""
    return (all(solve_integral(basis_a, row) is not None for row in basis_b)
            and all(solve_integral(basis_b, row) is not None for row in basis_a))


def _ldl(gram):
    """G = L D L^T with L unit lower triangular; raises unless G is positive
    definite. Returns (diag, L) as Fractions."""
    k = len(gram)
    w = [[Fraction(x) for x in row] for row in gram]
    low = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    diag = []
    for i in range(k):
        d = w[i][i]
        if d <= 0:
            raise ValueError("gram matrix is not positive definite")
        diag.append(d)
        for j in range(i + 1, k):
            low[j][i] = w[i][j] / d
        for r in range(i + 1, k):
            for s in range(r, k):
                w[r][s] -= low[r][i] * low[s][i] * d
                w[s][r] = w[r][s]
    return diag, low


def short_vectors(gram, n):
    """All integer vectors v (including ± pairs) with v G v^T == n, exactly.

    G must be positive definite; entries may be ints or Fractions. Sorted for
    determinism. n = 0 returns [0] only, n < 0 returns [].
    """
    if n < 0:
        return []
    k = len(gram)
    diag, low = _ldl(gram)
    out = []
    x = [0] * k

    def descend(i, rem):
        if i < 0:
            if rem == 0:
                out.append(tuple(x))
            return
        # y_i = x_i + sum_{j>i} L[j][i] x_j ; d_i y_i^2 <= rem
        shift = sum(low[j][i] * x[j] for j in range(i + 1, k))
        bound = rem / diag[i]
        r = isqrt(int(bound)) + 2  # widened window; exact check below
        center = -Fraction(shift)
        lo = ceil(center - r)
        hi = floor(center + r)
        for xi in range(lo, hi + 1):
            term = diag[i] * (xi + shift) ** 2
            if term <= rem:
                x[i] = xi
                descend(i - 1, rem - term)
        x[i] = 0

    descend(k - 1, Fraction(n))
    return sorted(out)
