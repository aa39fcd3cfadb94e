"""Hyperelliptic function fields F = k(x, y) with y^2 + h(x) y = f(x).

Places live on one of two affine charts: chart 0 is (x, y), chart 1 is
(u, w) = (1/x, y/x^(g+1)) and only its fiber over u = 0 is used.  A place
is identified by its chart, the monic irreducible p under it and, for
split and ramified fibers, the y-coordinate reduced mod p.
"""

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .algebra import poly as P
from .algebra.fields import GF, extension


class CurveError(ValueError):
    pass


class SingularModel(CurveError):
    pass


class DegreeMismatch(CurveError):
    pass


class WeilBoundViolation(CurveError):
    pass


SPLIT, RAMIFIED, INERT = "split", "ramified", "inert"


@dataclass(frozen=True)
class CurveModel:
    q: int
    h: tuple
    f: tuple
    genus: int
    var: str = "x"

    @property
    def F(self):
        return GF(self.q)

    @property
    def chart_eq(self):
        """(h, f) for chart 0 and chart 1."""
        return _charts(self)

    def __str__(self):
        from .notation import format_curve
        return format_curve(self)


@lru_cache(maxsize=None)
def _charts(C):
    g1 = C.genus + 1
    h_inf = P.reverse(C.h, g1) if C.h else P.ZERO
    f_inf = P.reverse(C.f, 2 * g1) if C.f else P.ZERO
    return ((C.h, C.f), (h_inf, f_inf))


def validate_curve(q, h, f, genus, var="x"):
    F = GF(q)
    h, f = P.trim(h), P.trim(f)
    if genus < 0:
        raise DegreeMismatch("negative genus")
    if P.deg(f) > 2 * genus + 2 or P.deg(h) > genus + 1:
        raise DegreeMismatch(f"deg f = {P.deg(f)}, deg h = {P.deg(h)} exceed bounds for genus {genus}")
    C = CurveModel(q, h, f, genus, var)
    for hh, ff in C.chart_eq:
        if _is_singular(F, hh, ff):
            raise SingularModel("model is singular")
    return C


def _disc(F, h, f):
    return P.add(F, P.mul(F, h, h), P.scale(F, F.from_int(4), f))


def _is_singular(F, h, f):
    if F.p != 2:
        disc = _disc(F, h, f)
        if not disc:
            return True
        return P.gcd(F, disc, P.derivative(F, disc)) != P.ONE
    if not h:
        # y^2 = f: every point with f'(x0) = 0 is singular
        return P.deg(P.derivative(F, f)) > 0 or not P.derivative(F, f)
    dh, df = P.derivative(F, h), P.derivative(F, f)
    cond = P.add(F, P.mul(F, P.mul(F, dh, dh), f), P.mul(F, df, df))
    return P.gcd(F, h, cond) != P.ONE


# ---------------------------------------------------------------- fibers

def _sqrt_mod(F, c, p):
    """Square root of c in F_q[x]/p (odd q), or None."""
    Q = F.q ** P.deg(p)
    c = P.mod(F, c, p)
    if not c:
        return P.ZERO
    if P.powmod(F, c, (Q - 1) // 2, p) != P.ONE:
        return None
    # Tonelli-Shanks
    s, e = Q - 1, 0
    while s % 2 == 0:
        s //= 2
        e += 1
    z = None
    for cand in P.all_polys(F, P.deg(p) - 1):
        if cand and P.powmod(F, cand, (Q - 1) // 2, p) != P.ONE:
            z = cand
            break
    M = e
    cc = P.powmod(F, z, s, p)
    t = P.powmod(F, c, s, p)
    r = P.powmod(F, c, (s + 1) // 2, p)
    while t != P.ONE:
        i, tt = 0, t
        while tt != P.ONE:
            tt = P.mod(F, P.mul(F, tt, tt), p)
            i += 1
        b = cc
        for _ in range(M - i - 1):
            b = P.mod(F, P.mul(F, b, b), p)
        M = i
        cc = P.mod(F, P.mul(F, b, b), p)
        t = P.mod(F, P.mul(F, t, cc), p)
        r = P.mod(F, P.mul(F, r, b), p)
    return r


def _bits(F, a, n):
    """F_2-coordinates of a polynomial of degree < n over F_2 or F_4."""
    v = 0
    w = 2 if F.q == 4 else 1
    for i, c in enumerate(a):
        v |= c << (w * i)
    return v


def _from_bits(F, v, n):
    w = 2 if F.q == 4 else 1
    mask = (1 << w) - 1
    return P.trim([(v >> (w * i)) & mask for i in range(n)])


def _artin_schreier_mod(F, c, p):
    """A solution w of w^2 + w = c in F_q[x]/p (q even), or None."""
    n = P.deg(p)
    dim = n * (2 if F.q == 4 else 1)
    cols = []
    for i in range(dim):
        b = _from_bits(F, 1 << i, n)
        img = P.add(F, P.mod(F, P.mul(F, b, b), p), b)
        cols.append(_bits(F, img, n))
    target = _bits(F, P.mod(F, c, p), n)
    # solve sum x_i cols[i] = target over F_2; rows of augmented system via pivoting on columns
    pivots = []  # (vector, combo)
    basis = {}
    for i, col in enumerate(cols):
        v, combo = col, 1 << i
        while v:
            hb = v.bit_length() - 1
            if hb in basis:
                bv, bc = basis[hb]
                v ^= bv
                combo ^= bc
            else:
                basis[hb] = (v, combo)
                break
    v, combo = target, 0
    while v:
        hb = v.bit_length() - 1
        if hb not in basis:
            return None
        bv, bc = basis[hb]
        v ^= bv
        combo ^= bc
    return _from_bits(F, combo, n)


@lru_cache(maxsize=None)
def fiber(C, chart, p):
    """(kind, roots) of the fiber over monic irreducible p on the given chart.

    roots are the y-coordinates mod p, sorted; empty for inert fibers.
    """
    F = C.F
    h, f = C.chart_eq[chart]
    h_p, f_p = P.mod(F, h, p), P.mod(F, f, p)
    if F.p != 2:
        disc = P.mod(F, _disc(F, h_p, f_p), p)
        inv2 = F.inv_table[F.from_int(2)]
        if not disc:
            r = P.mod(F, P.scale(F, F.neg_table[inv2], h_p), p)
            return RAMIFIED, (r,)
        s = _sqrt_mod(F, disc, p)
        if s is None:
            return INERT, ()
        r1 = P.mod(F, P.scale(F, inv2, P.sub(F, s, h_p)), p)
        r2 = P.mod(F, P.scale(F, inv2, P.sub(F, P.neg(F, s), h_p)), p)
        return SPLIT, tuple(sorted((r1, r2), key=P.key))
    if not h_p:
        Q = F.q ** P.deg(p)
        r = P.powmod(F, f_p, Q // 2, p)
        return RAMIFIED, (r,)
    hinv = P.invmod(F, h_p, p)
    c = P.mod(F, P.mul(F, f_p, P.mul(F, hinv, hinv)), p)
    w = _artin_schreier_mod(F, c, p)
    if w is None:
        return INERT, ()
    r1 = P.mod(F, P.mul(F, h_p, w), p)
    r2 = P.add(F, r1, h_p)
    return SPLIT, tuple(sorted((r1, r2), key=P.key))


# ---------------------------------------------------------------- places

@dataclass(frozen=True, order=False)
class Place:
    chart: int
    p: tuple
    kind: str
    root: tuple = None
    degree: int = field(default=0, compare=False)

    @property
    def is_infinite(self):
        return self.chart == 1

    def sort_key(self):
        return (self.degree, self.chart, P.key(self.p), P.key(self.root or ()))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()


def _make_place(chart, p, kind, root):
    d = P.deg(p) * (2 if kind == INERT else 1)
    return Place(chart, p, kind, root, d)


@lru_cache(maxsize=None)
def places_over(C, chart, p):
    kind, roots = fiber(C, chart, p)
    if kind == INERT:
        return (_make_place(chart, p, kind, None),)
    return tuple(_make_place(chart, p, kind, r) for r in roots)


def infinite_places(C):
    return places_over(C, 1, P.X)


def conjugate(C, place):
    """The conjugate place under y -> -y - h (itself unless split)."""
    if place.kind != SPLIT:
        return place
    others = [Q for Q in places_over(C, place.chart, place.p) if Q != place]
    return others[0]


@lru_cache(maxsize=None)
def places_of_degree(C, r):
    if r < 1:
        raise ValueError("degree must be >= 1")
    F = C.F
    out = []
    for p in P.irreducibles_of_degree(F, r):
        out.extend(Q for Q in places_over(C, 0, p) if Q.kind != INERT)
    if r % 2 == 0:
        for p in P.irreducibles_of_degree(F, r // 2):
            out.extend(Q for Q in places_over(C, 0, p) if Q.kind == INERT)
    out.extend(Q for Q in infinite_places(C) if Q.degree == r)
    return tuple(sorted(out))


def places_up_to(C, r):
    out = []
    for d in range(1, r + 1):
        out.extend(places_of_degree(C, d))
    return out


def rational_places(C):
    return list(places_of_degree(C, 1))


# ---------------------------------------------------------------- divisors

class Divisor:
    """Finite formal sum of places with nonzero integer coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        t = {}
        for pl, n in (terms.items() if isinstance(terms, dict) else (terms or ())):
            if n:
                t[pl] = t.get(pl, 0) + n
        self._terms = {pl: n for pl, n in t.items() if n}
        self._hash = None

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())

    def __getitem__(self, place):
        return self._terms.get(place, 0)

    def __iter__(self):
        return iter(sorted(self._terms, key=Place.sort_key))

    def __len__(self):
        return len(self._terms)

    @property
    def support(self):
        return list(self)

    @property
    def degree(self):
        return sum(n * pl.degree for pl, n in self._terms.items())

    @property
    def is_effective(self):
        return all(n > 0 for n in self._terms.values())

    def __add__(self, other):
        t = dict(self._terms)
        for pl, n in other._terms.items():
            t[pl] = t.get(pl, 0) + n
        return Divisor(t)

    def __neg__(self):
        return Divisor({pl: -n for pl, n in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        return Divisor({pl: k * n for pl, n in self._terms.items()})

    __rmul__ = __mul__

    def __le__(self, other):
        keys = set(self._terms) | set(other._terms)
        return all(self[k] <= other[k] for k in keys)

    def __eq__(self, other):
        return isinstance(other, Divisor) and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"Divisor({self.items()!r})"


def x_pole_divisor(C):
    """Pole divisor of x (degree 2)."""
    inf = infinite_places(C)
    if len(inf) == 1 and inf[0].kind == RAMIFIED:
        return Divisor({inf[0]: 2})
    return Divisor({pl: 1 for pl in inf})


def fiber_divisor(C, p):
    """Zero divisor of the polynomial p(x) (p monic irreducible, chart 0)."""
    pls = places_over(C, 0, p)
    if pls[0].kind == RAMIFIED:
        return Divisor({pls[0]: 2})
    return Divisor({pl: 1 for pl in pls})


def poly_divisor(C, a):
    """div(a(x)) for a nonzero polynomial a."""
    F = C.F
    D = Divisor()
    for p, e in P.factor(F, a):
        D = D + fiber_divisor(C, p) * e
    return D - x_pole_divisor(C) * P.deg(a)


def norm(C, a, b, chart=0):
    """N(a + b y) = a^2 - a b h - b^2 f on the given chart."""
    F = C.F
    h, f = C.chart_eq[chart]
    t1 = P.mul(F, a, a)
    t2 = P.mul(F, P.mul(F, a, b), h)
    t3 = P.mul(F, P.mul(F, b, b), f)
    return P.sub(F, P.sub(F, t1, t2), t3)


def _distribute(C, chart, p, m, a, b):
    """Valuations of primitive a + b y at the places over p, given mult m of p in the norm."""
    F = C.F
    pls = places_over(C, chart, p)
    kind = pls[0].kind
    if kind == INERT:
        if m % 2:
            raise ArithmeticError("odd norm multiplicity at an inert place")
        return {pls[0]: m // 2}
    if kind == RAMIFIED:
        return {pls[0]: m}
    for pl in pls:
        val = P.mod(F, P.add(F, a, P.mul(F, b, pl.root)), p)
        if not val:
            return {pl: m}
    raise ArithmeticError("norm divisible by p but no place over p is a zero")


def infinite_valuations(C, a, b):
    """Valuations of a + b y (nonzero, b may be zero) at the infinite places."""
    F = C.F
    g1 = C.genus + 1
    M = max(P.deg(a), P.deg(b) + g1 if b else -1)
    at = P.reverse(a, M) if a else P.ZERO
    bt = P.reverse(b, M - g1) if b else P.ZERO
    Nt = norm(C, at, bt, chart=1)
    mu = 0
    while Nt and Nt[mu] == 0:
        mu += 1
    pls = infinite_places(C)
    e = 2 if pls[0].kind == RAMIFIED else 1
    out = {pl: -M * e for pl in pls}
    if mu:
        for pl, v in _distribute(C, 1, P.X, mu, at, bt).items():
            out[pl] += v
    return out, M


def function_divisor(C, a, b=P.ZERO):
    """div(a(x) + b(x) y)."""
    F = C.F
    a, b = P.trim(a), P.trim(b)
    if not a and not b:
        raise ValueError("divisor of zero")
    if not b:
        return poly_divisor(C, a)
    c = P.gcd(F, a, b) if a else P.monic(F, b)
    D = Divisor()
    if P.deg(c) > 0:
        D = poly_divisor(C, c)
        a = P.divmod_(F, a, c)[0]
        b = P.divmod_(F, b, c)[0]
    terms = {}
    N = norm(C, a, b)
    for p, m in P.factor(F, N):
        terms.update(_distribute(C, 0, p, m, a, b))
    inf, _ = infinite_valuations(C, a, b)
    for pl, v in inf.items():
        if v:
            terms[pl] = terms.get(pl, 0) + v
    return D + Divisor(terms)


# ---------------------------------------------------------------- counting

@lru_cache(maxsize=None)
def count_points(C, i):
    """Number of degree-1 places of F * F_{q^i}, by brute force over both charts."""
    if i < 1:
        raise ValueError("i must be >= 1")
    F = C.F
    m = P.irreducibles_of_degree(F, i)[0]
    K = extension(C.q, m)
    total = 0
    (h, f), (hi, fi) = C.chart_eq
    for x in range(K.order):
        a = K.poly_eval(h, x)
        c = K.neg(K.poly_eval(f, x))
        total += len(K.roots_of_quadratic(a, c))
    a = K.poly_eval(hi, 0)
    c = K.neg(K.poly_eval(fi, 0))
    total += len(K.roots_of_quadratic(a, c))
    return total


def zeta_numerator(C):
    """Coefficients of L(T), lowest degree first."""
    g, q = C.genus, C.q
    if g == 0:
        return (1,)
    S = []
    for i in range(1, g + 1):
        s = count_points(C, i) - q ** i - 1
        if s * s > 4 * g * g * q ** i:
            raise WeilBoundViolation(f"N_{i} = {count_points(C, i)} violates the Weil bound")
        S.append(s)
    a = [1]
    for j in range(1, g + 1):
        acc = sum(S[i - 1] * a[j - i] for i in range(1, j + 1))
        if acc % j:
            raise WeilBoundViolation("non-integral L-polynomial coefficient")
        a.append(acc // j)
    for j in range(g + 1, 2 * g + 1):
        a.append(q ** (j - g) * a[2 * g - j])
    return tuple(a)


def class_number(C):
    return sum(zeta_numerator(C))
