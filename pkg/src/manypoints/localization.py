"""Truncated completions O_P/P^n at places of a hyperelliptic function field.

The completion at P is identified with R[[t]] where R is the residue field.
At unramified places t = x - x0 (resp. u - 0 at infinity); at ramified
places t = y - y0 (resp. w - w0).  Power series are tuples of residue-field
elements, lowest order first.
"""

from dataclasses import dataclass
from functools import lru_cache

from .algebra import poly as P
from .algebra.abgroup import group_from_presentation
from .algebra.fields import extension
from . import curve as cv


class NotAUnit(ArithmeticError):
    pass


GUARD = 2


# ---------------------------------------------------------------- series

def s_add(R, a, b):
    return tuple(R.add(x, y) for x, y in zip(a, b))


def s_sub(R, a, b):
    return tuple(R.sub(x, y) for x, y in zip(a, b))


def s_mul(R, a, b, n=None):
    n = n if n is not None else min(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if not x:
            continue
        for j in range(min(len(b), n - i)):
            y = b[j]
            if y:
                out[i + j] = R.add(out[i + j], R.mul(x, y))
    return tuple(out)


def s_inv(R, a, n=None):
    """Inverse of a series with nonzero constant term."""
    n = n if n is not None else len(a)
    if not a[0]:
        raise NotAUnit("series has zero constant term")
    c = R.inv(a[0])
    out = [c]
    for k in range(1, n):
        acc = 0
        for j in range(1, min(k, len(a) - 1) + 1):
            if a[j] and out[k - j]:
                acc = R.add(acc, R.mul(a[j], out[k - j]))
        out.append(R.neg(R.mul(acc, c)))
    return tuple(out)


def s_const(c, n):
    return (c,) + (0,) * (n - 1)


def s_poly(R, coeffs, X, n):
    """Base-field polynomial evaluated at the series X (Horner)."""
    acc = (0,) * n
    for c in reversed(coeffs):
        acc = s_mul(R, acc, X, n)
        acc = (R.add(acc[0], R.embed(c)),) + acc[1:]
    return acc


def s_pow(R, a, e, n):
    if e < 0:
        raise ValueError("negative exponent; invert the series first")
    out = s_const(1, n)
    base = a
    while e:
        if e & 1:
            out = s_mul(R, out, base, n)
        base = s_mul(R, base, base, n)
        e >>= 1
    return out


def valuation(a):
    for i, c in enumerate(a):
        if c:
            return i
    return None


# ---------------------------------------------------------------- expansions

@lru_cache(maxsize=None)
def residue_data(C, place):
    """(R, x0, y0): residue field and the residue point on the place's chart."""
    F = C.F
    h, f = C.chart_eq[place.chart]
    if place.kind == cv.INERT:
        R = extension(C.q, P.irreducibles_of_degree(F, place.degree)[0])
        x0 = next(z for z in range(R.order) if R.poly_eval(place.p, z) == 0)
        b = R.poly_eval(h, x0)
        c = R.neg(R.poly_eval(f, x0))
        y0 = R.roots_of_quadratic(b, c)[0]
    else:
        R = extension(C.q, place.p)
        x0 = R.x0
        y0 = R.from_poly(place.root)
    return R, x0, y0


@dataclass(frozen=True)
class LocalExpansion:
    """Chart coordinates of C as power series in a uniformizer t at ``place``.

    On chart 1 the series describe u = 1/x and w = y/x^(g+1).
    """

    place: object
    precision: int
    R: object
    x_series: tuple
    y_series: tuple

    def truncate(self, n):
        return LocalExpansion(self.place, n, self.R, self.x_series[:n], self.y_series[:n])


def _residual(C, R, chart, X, Y, n):
    h, f = C.chart_eq[chart]
    hX = s_poly(R, h, X, n)
    fX = s_poly(R, f, X, n)
    return s_sub(R, s_add(R, s_mul(R, Y, Y, n), s_mul(R, hX, Y, n)), fX)


def _lift(C, place, n):
    R, x0, y0 = residue_data(C, place)
    F = C.F
    h, f = C.chart_eq[place.chart]
    t = (0, 1) + (0,) * max(0, n - 2)
    if place.kind == cv.RAMIFIED:
        Y = s_add(R, s_const(y0, n), t[:n])
        # solve G(X, Y) = 0 for X; dG/dX = h'(X) Y - f'(X) is a unit
        dh, df = P.derivative(F, h), P.derivative(F, f)
        X = s_const(x0, n)
        prec = 1
        while prec < n:
            prec = min(2 * prec, n)
            G = _residual(C, R, place.chart, X[:prec], Y[:prec], prec)
            dG = s_sub(R, s_mul(R, s_poly(R, dh, X[:prec], prec), Y[:prec], prec),
                       s_poly(R, df, X[:prec], prec))
            X = s_sub(R, X[:prec], s_mul(R, G, s_inv(R, dG, prec), prec)) + (0,) * (n - prec)
        X = X[:n]
    else:
        X = s_add(R, s_const(x0, n), t[:n])
        hX = s_poly(R, h, X, n)
        Y = s_const(y0, n)
        prec = 1
        while prec < n:
            prec = min(2 * prec, n)
            G = _residual(C, R, place.chart, X[:prec], Y[:prec], prec)
            two = R.embed(F.from_int(2))
            dG = s_add(R, s_mul(R, s_const(two, prec), Y[:prec], prec), hX[:prec])
            Y = s_sub(R, Y[:prec], s_mul(R, G, s_inv(R, dG, prec), prec)) + (0,) * (n - prec)
        Y = Y[:n]
    return R, X, Y


_EXPANSIONS = {}


def expand_at(C, place, n):
    """LocalExpansion of the chart coordinates at ``place`` to precision n."""
    if n < 1:
        raise ValueError("precision must be >= 1")
    key = (C, place)
    cached = _EXPANSIONS.get(key)
    if cached is None or cached.precision < n:
        m = max(n + GUARD, 2 * cached.precision if cached else 0)
        R, X, Y = _lift(C, place, m)
        cached = LocalExpansion(place, m, R, X, Y)
        _EXPANSIONS[key] = cached
    return cached.truncate(n)


def _chart_numerator(C, a, b):
    """For chart 1: (A*, B*, M) with a + b y = (A*(u) + B*(u) w) / u^M."""
    g1 = C.genus + 1
    M = max(P.deg(a), P.deg(b) + g1 if b else -1, 0)
    A = P.reverse(a, M) if a else P.ZERO
    B = P.reverse(b, M - g1) if b else P.ZERO
    return A, B, M


def laurent(C, place, a, b, n):
    """(v, unit) with a + b y = t^v * unit, unit given to precision n."""
    a, b = P.trim(a), P.trim(b)
    if not a and not b:
        raise ValueError("zero function has no expansion")
    if place.chart == 0:
        A, B, M = a, b, 0
    else:
        A, B, M = _chart_numerator(C, a, b)
    # bound on the valuation of the numerator: the norm degree (times 2 at ramified places)
    Nrm = cv.norm(C, A, B, chart=place.chart)
    vmax = 2 * max(P.deg(Nrm), 0) + 2
    prec = n + GUARD
    while True:
        E = expand_at(C, place, prec)
        R = E.R
        S = s_add(R, s_poly(R, A, E.x_series, prec),
                  s_mul(R, s_poly(R, B, E.x_series, prec), E.y_series, prec))
        v = valuation(S)
        if v is not None and v + n <= prec:
            break
        if v is None and prec > vmax + n:
            raise ArithmeticError("failed to find the valuation of a nonzero function")
        prec *= 2
    unit = S[v:v + n]
    if M:
        U = E.x_series
        vu = valuation(U)
        E2 = expand_at(C, place, n + vu)
        uu = s_pow(R, E2.x_series[vu:vu + n], M, n)
        unit = s_mul(R, unit, s_inv(R, uu, n), n)
        v -= M * vu
    return v, tuple(unit)


def evaluate_unit(C, a, b, place, n):
    """Class of a + b y in (O_P/P^n)^*."""
    v, u = laurent(C, place, a, b, n)
    if v != 0:
        raise NotAUnit(f"valuation {v} at {place}")
    return u


# ---------------------------------------------------------------- unit groups

@dataclass
class UnitGroupPresentation:
    """(O_P/P^n)^* on generators [omega] + [1 + b t^j], with exact relations.

    ``coords`` gives the (non-canonical) exponent vector of a unit in the
    generators; ``dlog`` maps it into the invariant-factor group.
    """

    place: object
    n: int
    R: object
    generators: list
    levels: list
    relations: list
    group: object
    _inverse_powers: dict

    @property
    def order(self):
        return (self.R.order - 1) * self.R.order ** (self.n - 1)

    @property
    def ngens(self):
        return len(self.generators)

    @property
    def invariants(self):
        return self.group.invariants

    def mul(self, u, v):
        return s_mul(self.R, u, v, self.n)

    def coords(self, u):
        R, n = self.R, self.n
        u = tuple(u[:n])
        if len(u) < n or not u[0]:
            raise NotAUnit("not a unit of the residue ring")
        vec = [0] * self.ngens
        i0 = 0
        if R.order > 2:
            lg = R.log[u[0]]
            vec[0] = lg
            u = s_mul(R, u, s_const(R.inv(u[0]), n), n)
            i0 = 1
        R_basis = R.fp_basis()
        dim = len(R_basis)
        for j in range(1, n):
            c = u[j]
            if not c:
                continue
            digits = _fp_coordinates(R, c, R_basis)
            for i, e in enumerate(digits):
                if e:
                    idx = i0 + (j - 1) * dim + i
                    vec[idx] = e
                    u = s_mul(R, u, self._inverse_powers[(idx, e)], n)
        if any(u[1:]) or u[0] != 1:
            raise ArithmeticError("discrete logarithm failed to reduce to 1")
        return tuple(vec)

    def dlog(self, u):
        return self.group.image(self.coords(u))

    def element(self, vec):
        out = s_const(1, self.n)
        for g, e in zip(self.generators, vec):
            if e:
                out = s_mul(self.R, out, s_pow(self.R, g, e % self.order, self.n), self.n)
        return out

    def level_generators(self, m):
        """Coordinate vectors generating {u : u = 1 mod t^m}."""
        out = []
        for i, lev in enumerate(self.levels):
            if lev >= m:
                out.append(tuple(int(k == i) for k in range(self.ngens)))
        return out


def _fp_coordinates(R, c, basis):
    """Coordinates of c over the prime field w.r.t. R.fp_basis()."""
    if R.p == 2:
        return [(c >> i) & 1 for i in range(len(basis))]
    return list(R._digits_of[c])


@lru_cache(maxsize=None)
def unit_group(C, place, n):
    if n < 1:
        raise ValueError("precision must be >= 1")
    R = residue_data(C, place)[0]
    p = R.p
    gens, levels = [], []
    if R.order > 2:
        gens.append(s_const(R.primitive, n))
        levels.append(0)
    basis = R.fp_basis()
    for j in range(1, n):
        for b in basis:
            g = [0] * n
            g[0], g[j] = 1, b
            gens.append(tuple(g))
            levels.append(j)
    inv_pows = {}
    for i, g in enumerate(gens):
        if levels[i] == 0:
            continue
        gi = s_inv(R, g, n)
        cur = s_const(1, n)
        for e in range(1, p):
            cur = s_mul(R, cur, gi, n)
            inv_pows[(i, e)] = cur
    U = UnitGroupPresentation(place, n, R, gens, levels, [], None, inv_pows)
    rels = []
    for i, g in enumerate(gens):
        row = [0] * len(gens)
        if levels[i] == 0:
            row[i] = R.order - 1
        else:
            gp = s_pow(R, g, p, n)
            row = [-x for x in U.coords(gp)]
            row[i] += p
        rels.append(tuple(row))
    U.relations = rels
    U.group = group_from_presentation(len(gens), rels) if gens else \
        group_from_presentation(0, [])
    if U.group.torsion_order != U.order or U.group.rank:
        raise ArithmeticError("unit group presentation has the wrong order")
    return U


def principal_units_from_level(C, place, n, m):
    """Generators (as coordinate vectors) of the level-m subgroup of (O_P/P^n)^*."""
    if not 0 <= m <= n:
        raise ValueError("level must satisfy 0 <= m <= n")
    return unit_group(C, place, n).level_generators(m)
