"""Exact integer matrix normal forms.

Matrices are lists of rows of Python ints.  Lattices are row spans.
"""

RANK_PRIME = (1 << 61) - 1


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A:
        return []
    cols = list(zip(*B)) if B else []
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


def xgcd(a, b):
    """(g, s, t) with s*a + t*b = g >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def _combine(x, y, s, t, u, v, m):
    """(s*x + t*y, u*x + v*y) entrywise, optionally reduced mod m."""
    if m:
        nx = [(s * a + t * b) % m for a, b in zip(x, y)]
        ny = [(u * a + v * b) % m for a, b in zip(x, y)]
    else:
        nx = [s * a + t * b for a, b in zip(x, y)]
        ny = [u * a + v * b for a, b in zip(x, y)]
    return nx, ny


def smith(M, ncols=None, modulus=None, transforms=True):
    """Smith normal form.

    Returns ``(diag, U, V)`` with ``U*M*V`` diagonal with entries ``diag``
    (length min(rows, cols); divisibility chain d1 | d2 | ... with zeros last).

    With ``modulus`` m, the lattice is taken to be rowspan(M) + m*Z^n; the
    returned ``diag`` entries then divide m (an entry m means a zero mod m),
    ``V`` is only meaningful mod m and ``U`` is not returned.
    """
    m = modulus
    A = [list(r) for r in M]
    nr = len(A)
    nc = ncols if ncols is not None else (len(A[0]) if A else 0)
    if m:
        A = [[x % m for x in r] for r in A]
        # room for the virtual rows m*e_j that get split off during pivoting
    V = identity(nc) if transforms else None
    U = identity(nr) if (transforms and not m) else None
    diag = []
    t = 0
    while t < nc:
        # choose the pivot of least absolute value in the remaining block
        best = None
        for i in range(t, len(A)):
            row = A[i]
            for j in range(t, nc):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            if m:
                # every remaining coordinate is only bounded by m
                diag.extend([m] * (nc - t))
            else:
                diag.extend([0] * (min(len(A), nc) - t))
            break
        _, i, j = best
        if i != t:
            A[t], A[i] = A[i], A[t]
            if U is not None:
                U[t], U[i] = U[i], U[t]
        if j != t:
            for row in A:
                row[t], row[j] = row[j], row[t]
            if V is not None:
                for row in V:
                    row[t], row[j] = row[j], row[t]
        while True:
            # clear column t below the pivot
            for i in range(t + 1, len(A)):
                b = A[i][t]
                if not b:
                    continue
                a = A[t][t]
                if b % a == 0:
                    k = b // a
                    A[i] = [(y - k * x) % m if m else y - k * x for x, y in zip(A[t], A[i])]
                    if U is not None:
                        U[i] = [y - k * x for x, y in zip(U[t], U[i])]
                else:
                    g, s, tt = xgcd(a, b)
                    A[t], A[i] = _combine(A[t], A[i], s, tt, -b // g, a // g, m)
                    if U is not None:
                        U[t], U[i] = _combine(U[t], U[i], s, tt, -b // g, a // g, None)
            if m:
                a = A[t][t]
                g, s, tt = xgcd(a, m)
                if g != a:
                    # combine with the virtual row m*e_t
                    row = A[t]
                    new_t = [(s * x) % m for x in row]
                    new_t[t] = g
                    spill = [((-m // g) * x) % m for x in row]
                    spill[t] = 0
                    A[t] = new_t
                    if any(spill[t + 1:]):
                        A.append(spill)
            # clear row t right of the pivot
            dirty = False
            for j in range(t + 1, nc):
                b = A[t][j]
                if not b:
                    continue
                a = A[t][t]
                if b % a == 0:
                    k = b // a
                    for row in A:
                        row[j] = (row[j] - k * row[t]) % m if m else row[j] - k * row[t]
                    if V is not None:
                        for row in V:
                            row[j] = row[j] - k * row[t]
                            if m:
                                row[j] %= m
                else:
                    g, s, tt = xgcd(a, b)
                    u, v = -b // g, a // g
                    for row in A:
                        x, y = row[t], row[j]
                        row[t] = s * x + tt * y
                        row[j] = u * x + v * y
                        if m:
                            row[t] %= m
                            row[j] %= m
                    if V is not None:
                        for row in V:
                            x, y = row[t], row[j]
                            row[t] = s * x + tt * y
                            row[j] = u * x + v * y
                            if m:
                                row[t] %= m
                                row[j] %= m
                    dirty = True
            if m and A[t][t] == 0:
                A[t][t] = m
            if dirty:
                continue
            if any(A[i][t] for i in range(t + 1, len(A))):
                continue
            # divisibility: pivot must divide the whole remaining block
            a = A[t][t]
            bad = None
            for i in range(t + 1, len(A)):
                row = A[i]
                for j in range(t + 1, nc):
                    if row[j] % a:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            A[t] = [(x + y) % m if m else x + y for x, y in zip(A[t], A[bad])]
            if U is not None:
                U[t] = [x + y for x, y in zip(U[t], U[bad])]
        a = A[t][t]
        if a < 0:
            A[t] = [-x for x in A[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
            a = -a
        diag.append(a)
        t += 1
        if not m and t >= len(A):
            break
    if not m:
        diag = diag[:min(nr, nc)]
        # zero pivots found before a nonzero one cannot happen; sort zeros last
    return diag, U, V


def det(M):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        rowk = A[k]
        for i in range(k + 1, n):
            aik = A[i][k]
            rowi = A[i]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * akk - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = akk
    return sign * A[n - 1][n - 1]


class ModRank:
    """Incremental row echelon form over a large prime, for picking independent rows."""

    def __init__(self, ncols, prime=RANK_PRIME):
        self.n = ncols
        self.p = prime
        self.pivots = {}

    @property
    def rank(self):
        return len(self.pivots)

    def add(self, row):
        """Return True if the row is independent of those added so far."""
        p = self.p
        v = [x % p for x in row]
        for j in range(self.n):
            if not v[j]:
                continue
            piv = self.pivots.get(j)
            if piv is None:
                inv = pow(v[j], p - 2, p)
                self.pivots[j] = [(x * inv) % p for x in v]
                return True
            c = v[j]
            v = [(x - c * y) % p for x, y in zip(v, piv)]
        return False


class ModularHNF:
    """Triangular basis of rowspan(inserted rows) + m*Z^n, entries reduced mod m."""

    def __init__(self, ncols, modulus):
        self.n = ncols
        self.m = modulus
        self.rows = [[modulus if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def insert(self, vec):
        m = self.m
        v = [x % m for x in vec]
        for j in range(self.n):
            b = v[j]
            if not b:
                continue
            row = self.rows[j]
            a = row[j]
            if b % a == 0:
                k = b // a
                v = [(y - k * x) % m for x, y in zip(row, v)]
                continue
            g, s, t = xgcd(a, b)
            u, w = -b // g, a // g
            new_row = [(s * x + t * y) % m for x, y in zip(row, v)]
            new_row[j] = g
            v = [(u * x + w * y) % m for x, y in zip(row, v)]
            self.rows[j] = new_row

    def pivot_product(self):
        out = 1
        for j, row in enumerate(self.rows):
            out *= row[j]
        return out

    def rebased(self, modulus):
        """Same lattice under a smaller modulus, valid when modulus*Z^n lies in it."""
        other = ModularHNF(self.n, modulus)
        for row in self.rows:
            other.insert(row)
        return other
