"""Small dense linear algebra over generic scalars.

Matrices are tuples of tuples.  The exact routines are generic: determinants
use a division-free subset expansion (valid over any commutative ring,
including polynomial entries), while elimination-based routines (rank,
inverse, nullspace, inertia) require field scalars such as Fraction,
GaussianRational or SqrtExt.  Float work is delegated to numpy by callers.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import scalar_sign

Matrix = tuple


def mat(rows) -> Matrix:
    return tuple(tuple(r) for r in rows)


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(a: Matrix, v) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a: Matrix, s) -> Matrix:
    return tuple(tuple(s * x for x in row) for row in a)


def identity(n: int, one=Fraction(1), zero=Fraction(0)) -> Matrix:
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def det_ring(m: Matrix):
    """Determinant by column-subset dynamic programming; division-free."""
    n = len(m)
    if n == 1:
        return m[0][0]
    dp = {1 << c: m[0][c] for c in range(n)}
    for r in range(1, n):
        ndp = {}
        masks = [mask for mask in range(1 << n) if bin(mask).count("1") == r + 1]
        for mask in masks:
            acc = None
            idx = 0
            for c in range(n):
                if mask >> c & 1:
                    sub = dp[mask ^ (1 << c)]
                    term = m[r][c] * sub
                    if (r + idx) % 2 == 1:
                        term = -term
                    acc = term if acc is None else acc + term
                    idx += 1
            ndp[mask] = acc
        dp = ndp
    return dp[(1 << n) - 1]


def minor_det(m: Matrix, drop_row: int, drop_col: int):
    sub = tuple(tuple(x for j, x in enumerate(row) if j != drop_col)
                for i, row in enumerate(m) if i != drop_row)
    return det_ring(sub)


def adjugate_ring(m: Matrix) -> Matrix:
    """Classical adjugate via cofactors; division-free."""
    n = len(m)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            c = minor_det(m, j, i)   # transposed cofactor
            if (i + j) % 2 == 1:
                c = -c
            row.append(c)
        out.append(tuple(row))
    return tuple(out)


def _exactify(x):
    # raw ints would fall into float territory under true division
    return Fraction(x) if isinstance(x, int) else x


def _exactify_rows(m):
    return [[_exactify(x) for x in row] for row in m]


def _one_zero(sample):
    sample = _exactify(sample)
    zero = sample - sample
    one = sample / sample
    return one, zero


def inverse_field(m: Matrix) -> Matrix:
    """Exact inverse by Gauss-Jordan elimination; raises ZeroDivisionError if singular."""
    n = len(m)
    pivot_sample = None
    for row in m:
        for x in row:
            if x:
                pivot_sample = x
                break
        if pivot_sample is not None:
            break
    if pivot_sample is None:
        raise ZeroDivisionError("zero matrix")
    one, zero = _one_zero(pivot_sample)
    aug = [[_exactify(x) for x in row] + [one if i == j else zero for j in range(n)]
           for i, row in enumerate(m)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if aug[r][col]:
                piv = r
                break
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = one / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def rank_field(m: Matrix) -> int:
    """Exact rank by Gaussian elimination over a field."""
    if not m:
        return 0
    rows = _exactify_rows(m)
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(rows)):
            if rows[r][col]:
                piv = r
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pval = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            if rows[r][col]:
                f = rows[r][col] / pval
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def nullspace_field(m: Matrix) -> list[tuple]:
    """Basis of the right null space {v : m v = 0}, exact over a field."""
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rows = _exactify_rows(m)
    sample = None
    for row in rows:
        for x in row:
            if x:
                sample = x
                break
        if sample is not None:
            break
    if sample is None:
        one, zero = Fraction(1), Fraction(0)
    else:
        one, zero = _one_zero(sample)
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, nrows):
            if rows[r][col]:
                piv = r
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pval = rows[rank][col]
        rows[rank] = [x / pval for x in rows[rank]]
        for r in range(nrows):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(tuple(v))
    return basis


def inertia_sym(m: Matrix) -> tuple[int, int, int]:
    """(n_pos, n_neg, n_zero) of a symmetric matrix, by exact congruence."""
    n = len(m)
    a = _exactify_rows(m)
    pos = neg = zero = 0
    active = list(range(n))
    while active:
        piv = None
        for i in active:
            if a[i][i]:
                piv = i
                break
        if piv is None:
            # look for an off-diagonal entry to fold onto the diagonal
            od = None
            for i in active:
                for j in active:
                    if j > i and a[i][j]:
                        od = (i, j)
                        break
                if od:
                    break
            if od is None:
                zero += len(active)
                break
            i, j = od
            # congruence e_i -> e_i + e_j makes a[i][i] = 2 a[i][j] != 0
            for kcol in range(n):
                a[i][kcol] = a[i][kcol] + a[j][kcol]
            for krow in range(n):
                a[krow][i] = a[krow][i] + a[krow][j]
            continue
        p = a[piv][piv]
        s = scalar_sign(p)
        if s > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for r in active:
            if a[r][piv]:
                f = a[r][piv] / p
                for c in range(n):
                    a[r][c] = a[r][c] - f * a[piv][c]
        for c in active:
            if a[piv][c]:
                f = a[piv][c] / p
                for r in range(n):
                    a[r][c] = a[r][c] - f * a[r][piv]
    return pos, neg, zero


def congruence_diagonalize(m: Matrix) -> tuple[Matrix, Matrix]:
    """Return (S, D) with S m S^T = D diagonal, S exact and invertible.

    Symmetric input over a field; Gaussian congruence with the same
    diagonal-first pivoting as inertia_sym.
    """
    n = len(m)
    a = _exactify_rows(m)
    sample = None
    for row in a:
        for x in row:
            if x:
                sample = x
                break
        if sample:
            break
    one, zero = _one_zero(sample) if sample is not None else (Fraction(1), Fraction(0))
    s = [[one if i == j else zero for j in range(n)] for i in range(n)]

    def row_op(dst, src, f):
        # e_dst -> e_dst + f e_src, applied as congruence
        for c in range(n):
            a[dst][c] = a[dst][c] + f * a[src][c]
        for r in range(n):
            a[r][dst] = a[r][dst] + f * a[r][src]
        for c in range(n):
            s[dst][c] = s[dst][c] + f * s[src][c]

    done = []
    active = list(range(n))
    while active:
        piv = None
        for i in active:
            if a[i][i]:
                piv = i
                break
        if piv is None:
            od = None
            for i in active:
                for j in active:
                    if j > i and a[i][j]:
                        od = (i, j)
                        break
                if od:
                    break
            if od is None:
                break
            row_op(od[0], od[1], one)
            continue
        p = a[piv][piv]
        for r in active:
            if r != piv and a[r][piv]:
                row_op(r, piv, -(a[r][piv] / p))
        active.remove(piv)
        done.append(piv)
    return mat(s), mat(a)
