"""Finite fields of small order.

Elements of F_q (q in {2, 3, 4, 5}) are the integers 0..q-1.  For q = 4 the
integer ``b0 + 2*b1`` stands for ``b0 + b1*a`` with ``a^2 = a + 1``.

Extensions F_q[T]/m(T) encode an element ``c0 + c1 T + ...`` as the integer
``c0 + c1 q + c2 q^2 + ...``.  Multiplication goes through log/exp tables, so
these are meant for fields of at most a few thousand elements.
"""

from functools import lru_cache

SUPPORTED_Q = (2, 3, 4, 5)


class BaseField:
    """The prime field F_p or F_4, with full operation tables."""

    def __init__(self, q):
        if q not in SUPPORTED_Q:
            raise ValueError(f"unsupported field size {q}")
        self.q = q
        self.p = 2 if q == 4 else q
        self.degree = 2 if q == 4 else 1
        if q == 4:
            add = [[a ^ b for b in range(4)] for a in range(4)]
            mul = [[_f4_mul(a, b) for b in range(4)] for a in range(4)]
        else:
            add = [[(a + b) % q for b in range(q)] for a in range(q)]
            mul = [[(a * b) % q for b in range(q)] for a in range(q)]
        self.add_table = add
        self.mul_table = mul
        self.neg_table = [next(b for b in range(q) if add[a][b] == 0) for a in range(q)]
        self.inv_table = [0] + [next(b for b in range(q) if mul[a][b] == 1) for a in range(1, q)]
        self.primitive = next(g for g in range(2, q + 1) if g == q or self._order(g) == q - 1) \
            if q > 2 else 1

    def _order(self, g):
        x, n = g, 1
        while x != 1:
            x = self.mul_table[x][g]
            n += 1
        return n

    def __repr__(self):
        return f"GF({self.q})"

    def __reduce__(self):
        return (GF, (self.q,))

    def elements(self):
        return range(self.q)

    def from_int(self, n):
        """Image of the integer n (its residue mod p)."""
        return n % self.p


def _f4_mul(x, y):
    # (x0 + x1 a)(y0 + y1 a) with a^2 = a + 1
    x0, x1, y0, y1 = x & 1, x >> 1, y & 1, y >> 1
    c0 = (x0 & y0) ^ (x1 & y1)
    c1 = (x0 & y1) ^ (x1 & y0) ^ (x1 & y1)
    return c0 | (c1 << 1)


@lru_cache(maxsize=None)
def GF(q):
    return BaseField(q)


class ExtensionField:
    """F_q[T]/m(T) for a monic irreducible m, elements encoded as integers.

    ``x0`` is the class of T.  Log/exp tables are built eagerly.
    """

    def __init__(self, base, modulus):
        from . import poly as P

        self.base = base
        self.modulus = tuple(modulus)
        self.k = len(modulus) - 1
        self.q = base.q
        self.order = base.q ** self.k
        self.p = base.p
        Q = self.order
        q = base.q
        elems = [self._digits(n) for n in range(Q)]
        self._digits_of = elems
        m = self.modulus
        if P.deg(m) < 1 or not P.is_irreducible(base, m):
            raise ValueError("modulus is not irreducible")
        primes = P._prime_divisors(Q - 1) if Q > 2 else []
        gen = None
        for g in range(1, Q):
            gp = P.trim(elems[g])
            if all(P.powmod(base, gp, (Q - 1) // r, m) != P.ONE for r in primes):
                gen = gp
                break
        exp = [1]
        cur = P.ONE
        for _ in range(Q - 2):
            cur = P.mod(base, P.mul(base, cur, gen), m)
            exp.append(self._encode(cur))
        self.exp = exp + exp
        self.log = [None] * Q
        for i, e in enumerate(exp):
            self.log[e] = i
        if self.p == 2:
            self._add = None
        elif Q <= 625:
            self._add = [[self._add_slow(a, b) for b in range(Q)] for a in range(Q)]
        else:
            self._add = None
        self.x0 = self.from_poly(P.X)

    def __repr__(self):
        return f"GF({self.q}^{self.k})"

    def _digits(self, n):
        out = []
        for _ in range(self.k):
            out.append(n % self.q)
            n //= self.q
        return tuple(out)

    def _encode(self, coeffs):
        n = 0
        for c in reversed(coeffs):
            n = n * self.q + c
        return n

    def _add_slow(self, a, b):
        A = self.base.add_table
        da, db = self._digits_of[a], self._digits_of[b]
        return self._encode([A[x][y] for x, y in zip(da, db)])

    def from_poly(self, coeffs):
        """Encode a polynomial over the base field, reducing mod m."""
        from . import poly as P
        return self._encode(P.mod(self.base, tuple(coeffs), self.modulus))

    def to_poly(self, a):
        from . import poly as P
        return P.trim(self._digits_of[a])

    def embed(self, c):
        """Image of a base-field element."""
        return c

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        if self._add is not None:
            return self._add[a][b]
        return self._add_slow(a, b)

    def neg(self, a):
        if self.p == 2:
            return a
        N = self.base.neg_table
        return self._encode([N[x] for x in self._digits_of[a]])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.exp[(self.order - 1 - self.log[a]) % (self.order - 1)]

    def pow(self, a, n):
        if a == 0:
            return 0 if n > 0 else 1
        return self.exp[(self.log[a] * n) % (self.order - 1)]

    @property
    def primitive(self):
        return self.exp[1] if self.order > 2 else 1

    def fp_basis(self):
        """Basis of the field as a vector space over the prime field."""
        if self.p == 2:
            return [1 << i for i in range(self.k * self.base.degree)]
        return [self.q ** i for i in range(self.k)]

    def sqrt(self, a):
        """A square root of a, or None when a is a non-square."""
        if a == 0:
            return 0
        la = self.log[a]
        if self.p == 2:
            # squaring is a bijection; Q-1 is odd
            return self.exp[(la * ((self.order) // 2)) % (self.order - 1)]
        if la % 2:
            return None
        return self.exp[la // 2]

    def roots_of_quadratic(self, b, c):
        """Roots of Y^2 + b Y + c."""
        if self.p != 2:
            inv2 = self.inv(self.embed(2 % self.p))
            disc = self.sub(self.mul(b, b), self.mul(4 % self.p, c))
            s = self.sqrt(disc)
            if s is None:
                return []
            r1 = self.mul(self.sub(s, b), inv2)
            r2 = self.mul(self.sub(self.neg(s), b), inv2)
            return [r1] if r1 == r2 else sorted([r1, r2])
        if b == 0:
            return [self.sqrt(c)]
        # Y = b W, W^2 + W = c / b^2
        t = self.mul(c, self.inv(self.mul(b, b)))
        sols = [w for w in range(self.order) if self.add(self.mul(w, w), w) == t]
        return sorted(self.mul(b, w) for w in sols)

    def poly_eval(self, coeffs, x):
        """Evaluate a base-field polynomial at x."""
        acc = 0
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), c)
        return acc


_EXT_CACHE = {}


def extension(q, modulus):
    key = (q, tuple(modulus))
    F = _EXT_CACHE.get(key)
    if F is None:
        F = ExtensionField(GF(q), modulus)
        _EXT_CACHE[key] = F
    return F
