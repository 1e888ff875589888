"""Exact integer and rational matrix routines.

Matrices are lists of rows of Python ints (or Fractions where noted). Nothing
here ever touches floating point; entries grow freely since Python ints are
unbounded.
"""
from fractions import Fraction
from math import gcd


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(A):
    return [list(col) for col in zip(*A)] if A else []


def matmul(A, B):
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A, v):
    return [sum(a * b for a, b in zip(row, v)) for row in A]


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def bilinear(G, u, v):
    """u^T G v."""
    return dot(u, matvec(G, v))


def det(A):
    """Determinant by fraction-free Bareiss elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(row) for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def xgcd(a, b):
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def vector_gcd(v):
    g = 0
    for a in v:
        g = gcd(g, a)
    return g


def smith(A):
    """Smith normal form with transforms.

    Returns ``(d, U, V, Vinv)`` where ``U @ A @ V`` is the m x n matrix with
    ``d`` on its diagonal, ``d[i] | d[i+1]``, all ``d[i] >= 0`` (zeros last),
    and ``U``, ``V`` unimodular with ``V @ Vinv = I``.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(row) for row in A]
    U = identity(m)
    V = identity(n)
    Vinv = identity(n)

    def row_swap(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def col_swap(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def row_addmul(dst, src, q):
        # row_dst += q * row_src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def col_addmul(dst, src, q):
        # col_dst += q * col_src
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]
        Vinv[src] = [a - q * b for a, b in zip(Vinv[src], Vinv[dst])]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                a = D[i][j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
        if best is None:
            break
        _, i, j = best
        row_swap(t, i)
        col_swap(t, j)
        while True:
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    row_addmul(i, t, -(D[i][t] // p))
                    if D[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if D[t][j]:
                    col_addmul(j, t, -(D[t][j] // p))
                    if D[t][j]:
                        dirty = True
            if dirty:
                # a remainder smaller than the pivot survived: move it up
                best = None
                for i in range(t, m):
                    if D[i][t] and (best is None or abs(D[i][t]) < best[0]):
                        best = (abs(D[i][t]), i, t)
                for j in range(t, n):
                    if D[t][j] and abs(D[t][j]) < best[0]:
                        best = (abs(D[t][j]), t, j)
                _, i, j = best
                row_swap(t, i)
                col_swap(t, j)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_addmul(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    d = [D[i][i] for i in range(min(m, n))]
    return d, U, V, Vinv


def rank(A):
    if not A:
        return 0
    d = smith(A)[0]
    return sum(1 for x in d if x)


def kernel(A, ncols=None):
    """Integer basis (as rows) of the saturated kernel {x : A x = 0}."""
    if not A:
        return identity(ncols)
    d, _, V, _ = smith(A)
    n = len(A[0])
    r = sum(1 for x in d if x)
    return [[V[i][j] for i in range(n)] for j in range(r, n)]


def saturate_rows(B):
    """Basis (rows) of (Q-span of rows of B) intersected with Z^n."""
    if not B:
        return []
    d, _, _, Vinv = smith(B)
    r = sum(1 for x in d if x)
    return hnf([list(Vinv[i]) for i in range(r)])


def is_saturated(B):
    if not B:
        return True
    d = smith(B)[0]
    return all(x == 1 for x in d[: len(B)]) and len(d) >= len(B)


def hnf(rows):
    """Row-style Hermite normal form; zero rows are dropped.

    Pivots are positive and entries above each pivot are reduced into
    ``[0, pivot)``.
    """
    M = [list(r) for r in rows if any(r)]
    if not M:
        return []
    n = len(M[0])
    out = []
    col = 0
    while M and col < n:
        nz = [r for r in M if r[col]]
        rest = [r for r in M if not r[col]]
        if not nz:
            col += 1
            continue
        piv = nz[0]
        for r in nz[1:]:
            g, x, y = xgcd(piv[col], r[col])
            a, b = piv[col] // g, r[col] // g
            piv, r2 = (
                [x * p + y * q for p, q in zip(piv, r)],
                [b * p - a * q for p, q in zip(piv, r)],
            )
            if any(r2):
                rest.append(r2)
        if piv[col] < 0:
            piv = [-a for a in piv]
        out.append(piv)
        M = [r for r in rest if any(r)]
        col += 1
    for i, piv in enumerate(out):
        c = next(j for j, a in enumerate(piv) if a)
        for k in range(i):
            q = out[k][c] // piv[c]
            if q:
                out[k] = [a - q * b for a, b in zip(out[k], piv)]
    return out


def rational_inverse(A):
    """Inverse over Q as a matrix of Fractions."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        M[c], M[p] = M[p], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


def common_denominator(entries):
    den = 1
    for x in entries:
        d = Fraction(x).denominator
        den = den * d // gcd(den, d)
    return den


def rational_row_span_basis(rows):
    """Z-basis (Fractions) of the group generated by rational row vectors."""
    den = common_denominator(x for r in rows for x in r)
    ints = [[int(Fraction(x) * den) for x in r] for r in rows]
    return [[Fraction(x, den) for x in r] for r in hnf(ints)]


def signature(G):
    """(positive, negative, zero) counts of a symmetric integer matrix.

    Exact symmetric elimination over Q. A zero pivot whose row is nonzero is
    handled with a hyperbolic 2 x 2 block, which contributes one positive and
    one negative direction.
    """
    M = [[Fraction(x) for x in row] for row in G]
    idx = list(range(len(M)))
    pos = neg = 0
    while idx:
        i = next((k for k in idx if M[k][k] != 0), None)
        if i is not None:
            p = M[i][i]
            if p > 0:
                pos += 1
            else:
                neg += 1
            idx.remove(i)
            for a in idx:
                f = M[a][i] / p
                if f:
                    for b in idx:
                        M[a][b] -= f * M[i][b]
            continue
        pair = next(((a, b) for a in idx for b in idx if a < b and M[a][b] != 0), None)
        if pair is None:
            break
        a, b = pair
        # block [[0, c], [c, 0]]: eliminate both rows against it
        c = M[a][b]
        pos += 1
        neg += 1
        idx.remove(a)
        idx.remove(b)
        for k in idx:
            xa, xb = M[k][a], M[k][b]
            if not (xa or xb):
                continue
            for l in idx:
                M[k][l] -= (xa * M[b][l] + xb * M[a][l]) / c
    zero = len(G) - pos - neg
    return pos, neg, zero


def lll_gram(G, delta=Fraction(3, 4)):
    """LLL reduction of a positive definite Gram matrix.

    Returns an integer unimodular matrix ``T`` (rows are the new basis in old
    coordinates) so that ``T G T^T`` is LLL-reduced.
    """
    n = len(G)
    T = identity(n)
    Gc = [[Fraction(x) for x in row] for row in G]

    def gram_of(T):
        return matmul(matmul(T, Gc), transpose(T))

    def gso(Gm):
        mu = [[Fraction(0)] * n for _ in range(n)]
        B = [Fraction(0)] * n
        for i in range(n):
            for j in range(i):
                s = Gm[i][j] - sum(mu[j][k] * mu[i][k] * B[k] for k in range(j))
                mu[i][j] = s / B[j]
            B[i] = Gm[i][i] - sum(mu[i][k] ** 2 * B[k] for k in range(i))
        return mu, B

    k = 1
    Gm = gram_of(T)
    mu, B = gso(Gm)
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                T[k] = [a - q * b for a, b in zip(T[k], T[j])]
                Gm = gram_of(T)
                mu, B = gso(Gm)
        if B[k] >= (delta - mu[k][k - 1] ** 2) * B[k - 1]:
            k += 1
        else:
            T[k], T[k - 1] = T[k - 1], T[k]
            Gm = gram_of(T)
            mu, B = gso(Gm)
            k = max(k - 1, 1)
    return T
