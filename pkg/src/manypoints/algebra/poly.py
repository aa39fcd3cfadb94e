"""Univariate polynomials over F_q as coefficient tuples.

A polynomial is a tuple of field elements in ascending degree with no
trailing zeros; the zero polynomial is ``()`` and has degree -1.  Every
function takes the base field ``F`` (a :class:`BaseField`) first.
"""

import itertools
from functools import lru_cache

from .fields import GF

ZERO = ()
ONE = (1,)
X = (0, 1)


def trim(a):
    a = tuple(a)
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return a[:n]


def deg(a):
    return len(a) - 1


def add(F, a, b):
    A = F.add_table
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = A[out[i]][c]
    return trim(out)


def neg(F, a):
    N = F.neg_table
    return tuple(N[c] for c in a)


def sub(F, a, b):
    return add(F, a, neg(F, b))


def scale(F, c, a):
    if c == 0:
        return ZERO
    M = F.mul_table[c]
    return tuple(M[x] for x in a)


def mul(F, a, b):
    if not a or not b:
        return ZERO
    A, M = F.add_table, F.mul_table
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        Mx = M[x]
        for j, y in enumerate(b):
            if y:
                out[i + j] = A[out[i + j]][Mx[y]]
    return trim(out)


def shift(a, n):
    """Multiply by x^n."""
    return (0,) * n + a if a else ZERO


def divmod_(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    A, M, N = F.add_table, F.mul_table, F.neg_table
    r = list(a)
    db = len(b) - 1
    inv_lead = F.inv_table[b[-1]]
    if len(r) <= db:
        return ZERO, trim(r)
    qt = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if c == 0:
            continue
        c = M[c][inv_lead]
        qt[i - db] = c
        nc = N[c]
        Mn = M[nc]
        for j, y in enumerate(b):
            if y:
                r[i - db + j] = A[r[i - db + j]][Mn[y]]
    return trim(qt), trim(r[:db])


def mod(F, a, b):
    return divmod_(F, a, b)[1]


def monic(F, a):
    if not a or a[-1] == 1:
        return a
    return scale(F, F.inv_table[a[-1]], a)


def gcd(F, a, b):
    while b:
        a, b = b, mod(F, a, b)
    return monic(F, a)


def xgcd(F, a, b):
    """Return (g, s, t) with s*a + t*b = g monic."""
    r0, r1 = a, b
    s0, s1, t0, t1 = ONE, ZERO, ZERO, ONE
    while r1:
        qt, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, qt, s1))
        t0, t1 = t1, sub(F, t0, mul(F, qt, t1))
    if not r0:
        return ZERO, ZERO, ZERO
    c = F.inv_table[r0[-1]]
    return scale(F, c, r0), scale(F, c, s0), scale(F, c, t0)


def invmod(F, a, m):
    g, s, _ = xgcd(F, a, m)
    if g != ONE:
        raise ZeroDivisionError("not invertible modulo m")
    return mod(F, s, m)


def powmod(F, a, n, m):
    result = ONE
    a = mod(F, a, m)
    while n:
        if n & 1:
            result = mod(F, mul(F, result, a), m)
        n >>= 1
        if n:
            a = mod(F, mul(F, a, a), m)
    return result


def evaluate(F, a, x):
    A, M = F.add_table, F.mul_table
    acc = 0
    for c in reversed(a):
        acc = A[M[acc][x]][c]
    return acc


def derivative(F, a):
    A = F.add_table
    out = []
    for i, c in enumerate(a[1:], start=1):
        v = 0
        for _ in range(i % F.p):
            v = A[v][c]
        out.append(v)
    return trim(out)


def compose(F, a, b):
    """a(b(x))."""
    acc = ZERO
    for c in reversed(a):
        acc = add(F, mul(F, acc, b), (c,) if c else ZERO)
    return acc


def reverse(a, n):
    """x^n a(1/x) for n >= deg a."""
    return trim(tuple(reversed(a + (0,) * (n + 1 - len(a)))))


def constant(c):
    return (c,) if c else ZERO


def key(a):
    """Sort key: degree, then coefficients from the top."""
    return (len(a), tuple(reversed(a)))


def all_polys(F, max_deg):
    """All polynomials of degree <= max_deg (including zero)."""
    for coeffs in itertools.product(range(F.q), repeat=max_deg + 1):
        yield trim(coeffs)


def monic_of_degree(F, d):
    for low in itertools.product(range(F.q), repeat=d):
        yield tuple(low) + (1,)


def is_irreducible(F, a):
    """Rabin's test."""
    n = deg(a)
    if n <= 0:
        return False
    if n == 1:
        return True
    a = monic(F, a)
    q = F.q
    # x^(q^n) == x mod a
    xp = X
    powers = []
    for i in range(1, n + 1):
        xp = powmod(F, xp, q, a)
        powers.append(xp)
    if powers[-1] != mod(F, X, a):
        return False
    for r in _prime_divisors(n):
        h = sub(F, powers[n // r - 1], X)
        if gcd(F, a, h) != ONE:
            return False
    return True


def _prime_divisors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def _irreducibles_of_degree(q, d):
    F = GF(q)
    return tuple(sorted((p for p in monic_of_degree(F, d) if is_irreducible(F, p)), key=key))


def irreducibles(F, max_deg):
    """Monic irreducibles of degree 1..max_deg, ordered by (degree, coefficients)."""
    if max_deg < 1:
        raise ValueError("max_deg must be >= 1")
    out = []
    for d in range(1, max_deg + 1):
        out.extend(_irreducibles_of_degree(F.q, d))
    return out


def irreducibles_of_degree(F, d):
    return list(_irreducibles_of_degree(F.q, d))


def squarefree_decomposition(F, a):
    """List of (squarefree factor, multiplicity) with a = const * prod."""
    a = monic(F, a)
    if deg(a) <= 0:
        return []
    out = []
    _sqf(F, a, 1, out)
    merged = {}
    for f, m in out:
        if deg(f) > 0:
            merged[f] = merged.get(f, 0) + m
    return sorted(merged.items(), key=lambda t: (t[1], key(t[0])))


def _pth_root(F, a):
    # a is a polynomial in x^p; Frobenius on coefficients is inverted too
    p = F.p
    out = []
    for i in range(0, len(a), p):
        c = a[i]
        # c^(q/p) is the inverse Frobenius when q = p^2 (q = 4); identity for prime fields
        if F.q == 4:
            c = F.mul_table[c][c]
        out.append(c)
    return trim(out)


def _sqf(F, a, mult, out):
    d = derivative(F, a)
    if not d:
        _sqf(F, _pth_root(F, a), mult * F.p, out)
        return
    c = gcd(F, a, d)
    w = divmod_(F, a, c)[0]
    i = 1
    while deg(w) > 0:
        y = gcd(F, w, c)
        z = divmod_(F, w, y)[0]
        if deg(z) > 0:
            out.append((monic(F, z), i * mult))
        i += 1
        w = y
        c = divmod_(F, c, y)[0]
    if deg(c) > 0:
        _sqf(F, _pth_root(F, c), mult * F.p, out)


def distinct_degree(F, a):
    """For squarefree monic a: list of (product of irreducible factors of degree d, d)."""
    out = []
    q = F.q
    xp = X
    d = 0
    rest = a
    while deg(rest) >= 2 * (d + 1):
        d += 1
        xp = powmod(F, xp, q, rest)
        g = gcd(F, rest, sub(F, xp, X))
        if g != ONE:
            out.append((g, d))
            rest = divmod_(F, rest, g)[0]
            xp = mod(F, xp, rest)
    if deg(rest) > 0:
        out.append((rest, deg(rest)))
    return out


def equal_degree(F, a, d, rng=None):
    """Split a squarefree product of irreducibles of degree d (Cantor-Zassenhaus)."""
    import random
    rng = rng or random.Random(12345)
    n = deg(a)
    if n == d:
        return [a]
    q = F.q
    while True:
        r = trim([rng.randrange(q) for _ in range(n)])
        if deg(r) <= 0:
            continue
        if F.p == 2:
            # trace map sum_{i < d*k} r^(2^i), q = 2^k
            k = F.degree
            t, cur = r, r
            for _ in range(d * k - 1):
                cur = powmod(F, cur, 2, a)
                t = add(F, t, cur)
            g = gcd(F, a, t)
        else:
            e = (q ** d - 1) // 2
            g = gcd(F, a, sub(F, powmod(F, r, e, a), ONE))
        if 0 < deg(g) < n:
            return equal_degree(F, g, d, rng) + equal_degree(F, divmod_(F, a, g)[0], d, rng)


def factor(F, a):
    """Factorization into monic irreducibles: sorted list of (p, multiplicity)."""
    out = {}
    for s, m in squarefree_decomposition(F, a):
        for g, d in distinct_degree(F, s):
            for p in equal_degree(F, g, d):
                out[p] = out.get(p, 0) + m
    return sorted(out.items(), key=lambda t: key(t[0]))


def max_factor_degree(F, a):
    """Largest degree of an irreducible factor (0 for constants)."""
    best = 0
    for s, _ in squarefree_decomposition(F, a):
        for _, d in distinct_degree(F, s):
            best = max(best, d)
    return best
