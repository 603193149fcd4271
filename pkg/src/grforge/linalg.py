"""Dense exact linear algebra over a field (Q, Q(zeta), or F_p).

Matrices are lists of row lists; entries are Fraction, Cyc, or Fp values.
Everything is plain Gaussian elimination with exact arithmetic; no pivot
growth control is needed at desk scale.
"""

from __future__ import annotations


def mat_copy(m):
    return [list(r) for r in m]


def identity(field, n):
    z, o = field.zero, field.one
    return [[o if i == j else z for j in range(n)] for i in range(n)]


def zeros(field, r, c):
    z = field.zero
    return [[z] * c for _ in range(r)]


def mat_mul(a, b, field):
    n, m = len(a), len(b[0])
    inner = len(b)
    z = field.zero
    out = [[z] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            x = ai[k]
            if x:
                bk = b[k]
                for j in range(m):
                    if bk[j]:
                        oi[j] = oi[j] + x * bk[j]
    return out


def mat_vec(a, v, field):
    z = field.zero
    out = []
    for row in a:
        s = z
        for x, y in zip(row, v):
            if x and y:
                s = s + x * y
        out.append(s)
    return out


def vec_add(u, v):
    return [a + b for a, b in zip(u, v)]


def vec_sub(u, v):
    return [a - b for a, b in zip(u, v)]


def vec_scale(c, v):
    return [c * a for a in v]


def is_zero_vec(v):
    return not any(v)


def transpose(m):
    return [list(col) for col in zip(*m)]


def rref(rows, field):
    """Reduced row echelon form.  Returns (echelon_rows, pivot_columns).

    Zero rows are dropped; the result spans the same row space.
    """
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    out = []
    work = rows
    for col in range(ncols):
        piv = None
        for i, r in enumerate(work):
            if r[col]:
                piv = i
                break
        if piv is None:
            continue
        prow = work.pop(piv)
        inv = field.one / prow[col]
        prow = [inv * x for x in prow]
        for r in work:
            if r[col]:
                c = r[col]
                for j in range(col, ncols):
                    if prow[j]:
                        r[j] = r[j] - c * prow[j]
        for r in out:
            if r[col]:
                c = r[col]
                for j in range(col, ncols):
                    if prow[j]:
                        r[j] = r[j] - c * prow[j]
        out.append(prow)
        pivots.append(col)
        work = [r for r in work if any(r)]
        if not work:
            break
    order = sorted(range(len(pivots)), key=lambda i: pivots[i])
    return [out[i] for i in order], [pivots[i] for i in order]


def rank(rows, field):
    return len(rref(rows, field)[0])


def in_row_space(v, ech, pivots):
    """Reduce v against an rref basis; return the remainder."""
    v = list(v)
    for row, col in zip(ech, pivots):
        if v[col]:
            c = v[col]
            for j in range(len(v)):
                if row[j]:
                    v[j] = v[j] - c * row[j]
    return v


def coords_in_row_space(v, ech, pivots):
    """Coordinates of v in the rref basis, or None if v is outside."""
    v = list(v)
    cs = []
    for row, col in zip(ech, pivots):
        c = v[col]
        cs.append(c)
        if c:
            for j in range(len(v)):
                if row[j]:
                    v[j] = v[j] - c * row[j]
    if any(v):
        return None
    return cs


def solve_right(a, b, field):
    """One solution x of a x = b (column vector), or None."""
    n, m = len(a), len(a[0])
    aug = [list(a[i]) + [b[i]] for i in range(n)]
    ech, pivots = rref(aug, field)
    x = [field.zero] * m
    for row, col in zip(ech, pivots):
        if col == m:
            return None
        x[col] = row[m]
    return x


def kernel_right(a, field):
    """Basis of the right kernel {x : a x = 0}."""
    m = len(a[0]) if a else 0
    ech, pivots = rref(a, field)
    pivset = set(pivots)
    free = [j for j in range(m) if j not in pivset]
    basis = []
    for f in free:
        x = [field.zero] * m
        x[f] = field.one
        for row, col in zip(ech, pivots):
            x[col] = -row[f]
        basis.append(x)
    return basis


def kernel_left(a, field):
    """Basis of the left kernel {y : y a = 0}."""
    return kernel_right(transpose(a), field)


def invert(a, field):
    """Inverse matrix, or None if singular."""
    n = len(a)
    aug = [list(a[i]) + identity(field, n)[i] for i in range(n)]
    ech, pivots = rref(aug, field)
    if len(ech) < n or pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in ech[:n]]


def det(a, field):
    """Determinant by fraction-free-ish Gaussian elimination (exact fields)."""
    n = len(a)
    m = mat_copy(a)
    d = field.one
    sign = 1
    for col in range(n):
        piv = None
        for i in range(col, n):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            return field.zero
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        d = d * m[col][col]
        inv = field.one / m[col][col]
        for i in range(col + 1, n):
            if m[i][col]:
                c = m[i][col] * inv
                for j in range(col, n):
                    if m[col][j]:
                        m[i][j] = m[i][j] - c * m[col][j]
    return d if sign == 1 else -d


def charpoly(a, field):
    """Characteristic polynomial coefficients [c_0=1, c_1, ..., c_n] of a.

    Computed by the Hessenberg method, which works over any exact field.
    det(tI - a) = t^n + c_1 t^(n-1) + ... + c_n.
    """
    n = len(a)
    h = mat_copy(a)
    for col in range(n - 2):
        piv = None
        for i in range(col + 1, n):
            if h[i][col]:
                piv = i
                break
        if piv is None:
            continue
        if piv != col + 1:
            h[col + 1], h[piv] = h[piv], h[col + 1]
            for r in h:
                r[col + 1], r[piv] = r[piv], r[col + 1]
        inv = field.one / h[col + 1][col]
        for i in range(col + 2, n):
            if h[i][col]:
                c = h[i][col] * inv
                for j in range(n):
                    h[i][j] = h[i][j] - c * h[col + 1][j]
                for r in h:
                    r[col + 1] = r[col + 1] + c * r[i]
    # charpoly of Hessenberg matrix by the standard recurrence;
    # p_k = charpoly of leading k x k block, stored lowest-degree-last
    z, o = field.zero, field.one
    polys = [[o]]
    for k in range(1, n + 1):
        prev = polys[k - 1]
        cur = [z] * (k + 1)
        # t * prev
        for i, c in enumerate(prev):
            cur[i] = cur[i] + c
        # - h[k-1][k-1] * prev
        for i, c in enumerate(prev):
            cur[i + 1] = cur[i + 1] - h[k - 1][k - 1] * c
        prod = o
        for m_ in range(1, k):
            prod = prod * h[k - m_][k - m_ - 1]
            coef = h[k - m_ - 1][k - 1] * prod
            if coef:
                sub = polys[k - m_ - 1]
                for i, c in enumerate(sub):
                    cur[i + m_ + 1] = cur[i + m_ + 1] - coef * c
        polys.append(cur)
    return polys[n]


def minpoly(a, field):
    """Minimal polynomial of a square matrix, monic, lowest-degree-first."""
    n = len(a)
    flats = []
    cur = identity(field, n)
    while True:
        flat = [x for row in cur for x in row]
        if flats:
            sol = solve_right(transpose(flats), flat, field)
        else:
            sol = None
        if sol is not None:
            return [-c for c in sol] + [field.one]
        flats.append(flat)
        cur = mat_mul(cur, a, field)


def poly_eval_matrix(coeffs, a, field):
    """Evaluate a polynomial (lowest-degree-first) at a matrix."""
    n = len(a)
    out = zeros(field, n, n)
    pw = identity(field, n)
    for c in coeffs:
        if c:
            for i in range(n):
                for j in range(n):
                    out[i][j] = out[i][j] + c * pw[i][j]
        pw = mat_mul(pw, a, field)
    return out
