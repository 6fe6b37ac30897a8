"""Exact integer matrix algebra on small row lattices.

Everything here works on plain ``list[list[int]]`` with rows as lattice
generators.  Sizes throughout the package stay tiny (at most ~16 x ~18),
so clarity and exactness win over asymptotics: Hermite normal form with
a tracked unimodular transform powers kernels, saturation, restriction
and membership; LLL is the classic all-integer variant so no floating
error can enter the reduction itself.
"""

from fractions import Fraction

Matrix = list  # list of rows of int


def _xgcd(a: int, b: int):
    """Extended gcd: returns (g, x, y) with g = a*x + b*y and g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(rows: Matrix, ncols: int) -> Matrix:
    return [[row[j] for row in rows] for j in range(ncols)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    nc = len(b[0]) if b else 0
    return [[sum(ra[k] * b[k][j] for k in range(len(ra))) for j in range(nc)]
            for ra in a]


def hnf_with_transform(rows: Matrix):
    """Row-style Hermite normal form.

    Returns (H, U, pivots) with U unimodular, U * M = H, the nonzero rows
    of H on top with positive pivots in strictly increasing columns, and
    entries above each pivot reduced into [0, pivot).
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    H = [[int(x) for x in row] for row in rows]
    U = identity(m)
    piv = 0
    pivots = []
    for col in range(n):
        if piv >= m:
            break
        for i in range(piv + 1, m):
            if H[i][col] == 0:
                continue
            a, b = H[piv][col], H[i][col]
            g, x, y = _xgcd(a, b)
            p, q = a // g, b // g
            # unimodular 2x2: [[x, y], [-q, p]] has det x*p + y*q = 1
            H[piv], H[i] = (
                [x * H[piv][k] + y * H[i][k] for k in range(n)],
                [-q * H[piv][k] + p * H[i][k] for k in range(n)],
            )
            U[piv], U[i] = (
                [x * U[piv][k] + y * U[i][k] for k in range(m)],
                [-q * U[piv][k] + p * U[i][k] for k in range(m)],
            )
        if H[piv][col] == 0:
            continue
        if H[piv][col] < 0:
            H[piv] = [-x for x in H[piv]]
            U[piv] = [-x for x in U[piv]]
        a = H[piv][col]
        for i in range(piv):
            q = H[i][col] // a
            if q:
                H[i] = [hi - q * hp for hi, hp in zip(H[i], H[piv])]
                U[i] = [ui - q * up for ui, up in zip(U[i], U[piv])]
        pivots.append(col)
        piv += 1
    return H, U, pivots


def hnf(rows: Matrix) -> Matrix:
    """Canonical basis (nonzero HNF rows) of the lattice spanned by rows."""
    H, _, pivots = hnf_with_transform(rows)
    return H[: len(pivots)]


def lattice_rank(rows: Matrix) -> int:
    return len(hnf(rows))


def left_kernel(rows: Matrix) -> Matrix:
    """Canonical basis of {c in Z^m : c * M = 0} for M with m rows."""
    H, U, pivots = hnf_with_transform(rows)
    return hnf(U[len(pivots):])


def right_kernel(rows: Matrix, ncols: int) -> Matrix:
    """Canonical basis (as rows) of {x in Z^ncols : M x = 0}."""
    return left_kernel(transpose(rows, ncols))


def saturate(rows: Matrix, ncols: int) -> Matrix:
    """Saturation of the row lattice: (Q-rowspan of rows) intersect Z^ncols.

    Computed as the orthogonal-complement lattice of the integer kernel,
    which is automatically primitive.
    """
    k = right_kernel(rows, ncols)
    return right_kernel(k, ncols)


def solve_in_rowspace(rows: Matrix, v) -> list | None:
    """Rational coefficients expressing v in the row span, or None.

    ``rows`` need not be in HNF; they are normalized internally, so the
    returned coefficients refer to the HNF basis of the span.
    """
    H, _, pivots = hnf_with_transform(rows)
    basis = H[: len(pivots)]
    vec = [Fraction(int(x)) for x in v]
    coeffs = []
    for row, pc in zip(basis, pivots):
        c = vec[pc] / row[pc]
        coeffs.append(c)
        if c:
            vec = [vi - c * ri for vi, ri in zip(vec, row)]
    if any(vec):
        return None
    return coeffs


def in_lattice(v, rows: Matrix) -> bool:
    coeffs = solve_in_rowspace(rows, v)
    return coeffs is not None and all(c.denominator == 1 for c in coeffs)


def min_denominator(v, rows: Matrix) -> int | None:
    """Smallest c >= 1 with c*v in the row lattice; None if v is not even
    in the rational span."""
    coeffs = solve_in_rowspace(rows, v)
    if coeffs is None:
        return None
    d = 1
    for c in coeffs:
        d = d * c.denominator // _gcd(d, c.denominator)
    return d


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def solve_integral(rows: Matrix, v) -> list | None:
    """Integer coefficients c with c * rows = v, or None.

    Rows may be dependent; one particular solution is returned.
    """
    H, U, pivots = hnf_with_transform(rows)
    basis = H[: len(pivots)]
    vec = [Fraction(int(x)) for x in v]
    coeffs = []
    for row, pc in zip(basis, pivots):
        c = vec[pc] / row[pc]
        if c.denominator != 1:
            return None
        coeffs.append(int(c))
        if c:
            vec = [vi - c * ri for vi, ri in zip(vec, row)]
    if any(vec):
        return None
    out = [0] * len(rows)
    for ci, urow in zip(coeffs, U):
        if ci:
            out = [o + ci * u for o, u in zip(out, urow)]
    return out


def restrict_support(rows: Matrix, ncols: int, keep) -> Matrix:
    """Sublattice of vectors supported on the ``keep`` columns.

    Returns the canonical basis of {x in L : x_j = 0 for j not in keep},
    still expressed in all ncols columns.  Saturation of L is preserved.
    """
    keep = set(keep)
    excluded = [j for j in range(ncols) if j not in keep]
    if not rows:
        return []
    if not excluded:
        return hnf(rows)
    m_ex = [[row[j] for j in excluded] for row in rows]
    combos = left_kernel(m_ex)
    return hnf(matmul(combos, rows))


def project_columns(rows: Matrix, cols) -> Matrix:
    return [[row[j] for j in cols] for row in rows]


def lll_reduce(rows: Matrix, delta_num: int = 99, delta_den: int = 100) -> Matrix:
    """All-integer LLL reduction (Cohen, Alg. 2.6.7) of independent rows.

    Gram-Schmidt data is carried as integers lam[i][j] / d[j], so the
    reduction is exact for arbitrarily large entries.  Rows must be
    linearly independent (true for the relation-finder embeddings, which
    contain an identity block).
    """
    b = [[int(x) for x in row] for row in rows]
    m = len(b)
    if m <= 1:
        return b

    def dot(u, v):
        return sum(x * y for x, y in zip(u, v))

    d = [0] * (m + 1)
    d[0] = 1
    lam = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1):
            u = dot(b[i], b[j])
            for k in range(j):
                u = (d[k + 1] * u - lam[i][k] * lam[j][k]) // d[k]
            if j < i:
                lam[i][j] = u
            else:
                d[i + 1] = u
                if u <= 0:
                    raise ValueError("lll_reduce requires independent rows")

    def red(k, l):
        if 2 * abs(lam[k][l]) > d[l + 1]:
            q = (2 * lam[k][l] + d[l + 1]) // (2 * d[l + 1])
            b[k] = [x - q * y for x, y in zip(b[k], b[l])]
            lam[k][l] -= q * d[l + 1]
            for i in range(l):
                lam[k][i] -= q * lam[l][i]

    def swap(k):
        b[k], b[k - 1] = b[k - 1], b[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lam_ = lam[k][k - 1]
        bb = (d[k - 1] * d[k + 1] + lam_ * lam_) // d[k]
        for i in range(k + 1, m):
            t = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - lam_ * t) // d[k]
            lam[i][k - 1] = (bb * t + lam_ * lam[i][k]) // d[k + 1]
        d[k] = bb

    k = 1
    while k < m:
        red(k, k - 1)
        if delta_den * (d[k - 1] * d[k + 1] + lam[k][k - 1] ** 2) < delta_num * d[k] ** 2:
            swap(k)
            k = max(k - 1, 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1
    return b
