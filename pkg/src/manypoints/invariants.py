"""Invariants of the class field attached to a finite-index subgroup U of Cl_D.

The degree is the index d = [Cl_D : U].  Conductor exponents come from the
unit filtration: a character chi of Cl_D/U has exponent m at P when m is
the least level whose unit image chi kills.  The genus then follows from

    2 g_K - 2 = d (2 g_F - 2) + sum_chi deg f(chi)

and rational places are counted with the splitting law.
"""

import json
import math
from dataclasses import dataclass, field

from .algebra import poly as P
from .algebra.abgroup import (characters_trivial_on, element_order, quotient, subgroup_order,
                              subgroups_of_index)
from . import curve as cv
from . import localization as loc
from .rayclass import build_ray_class_group


class InfiniteIndex(ValueError):
    pass


class ConstantFieldExtension(ValueError):
    pass


class ParityViolation(ArithmeticError):
    pass


class InapplicablePlace(ValueError):
    pass


@dataclass
class AbelianExtension:
    rcg: object
    U: list
    d: int
    quotient: object
    project: object
    # generators, in the coordinates of Cl_D/<U>, of the extra part of the subgroup
    above: tuple = ()

    @property
    def curve(self):
        return self.rcg.curve


@dataclass
class PlaceReport:
    place: object
    e: int
    f: int
    count: int

    @property
    def rational_above(self):
        return self.count if self.f == 1 and self.place.degree == 1 else 0


@dataclass
class ExtensionInvariants:
    d: int
    conductor: object
    genus: int
    n_rational: int
    conductor_sum: int
    splitting: list = field(default_factory=list)

    def to_json(self, C, D_text=None, S_text=None):
        from .notation import format_curve, format_divisor, format_place
        obj = {
            "q": C.q,
            "curve": format_curve(C),
            "D": D_text,
            "S_or_U": S_text,
            "d": self.d,
            "conductor": format_divisor(C, self.conductor),
            "genus": self.genus,
            "n_rational": self.n_rational,
            "splitting": [{"place": format_place(C, r.place), "e": r.e, "f": r.f,
                           "places_above": r.count} for r in self.splitting],
        }
        return json.dumps(obj, sort_keys=True)


def subgroup_from_split_places(rcg, S):
    """The subgroup generated by the classes of S, i.e. the field F_S^D."""
    S = list(S)
    if not S:
        raise InfiniteIndex("the split set is empty")
    gens = [rcg.place_class(pl) for pl in S]
    return subgroup_extension(rcg, gens)


def subgroup_extension(rcg, gens):
    if math.gcd(*(rcg.degree_map(g) for g in gens)) != 1:
        if all(rcg.degree_map(g) == 0 for g in gens):
            raise InfiniteIndex("the subgroup has infinite index")
        raise ConstantFieldExtension("degrees of U do not generate Z")
    Q, proj = quotient(rcg.group, gens)
    if not Q.is_finite:
        raise InfiniteIndex("the subgroup has infinite index")
    return AbelianExtension(rcg, list(gens), Q.order, Q, proj)


def extensions_above(ext, d):
    """All class fields of degree d inside ext, i.e. index-d subgroups containing U."""
    out = []
    if ext.d % d:
        return out
    for H in subgroups_of_index(ext.quotient, d):
        Q2, proj2 = quotient(ext.quotient, list(H))
        project = (lambda p1, p2: (lambda x: p2(p1(x))))(ext.project, proj2)
        out.append(AbelianExtension(ext.rcg, list(ext.U), Q2.order, Q2, project, tuple(H)))
    return out


def _characters(ext):
    return characters_trivial_on(ext.quotient, [])


def character_conductor(ext, chi):
    """Conductor of a character of Cl_D/U as a divisor."""
    rcg = ext.rcg
    terms = {}
    for pl, U in rcg.units.items():
        n = U.n
        m = n
        while m > 0:
            kern = [ext.project(g) for g in rcg.level_kernel(pl, m - 1)]
            if chi.is_trivial_on(kern):
                m -= 1
            else:
                break
        if m:
            terms[pl] = m
    return cv.Divisor(terms)


def conductor_data(ext):
    """(list of character conductors, conductor of the extension)."""
    conds = [character_conductor(ext, chi) for chi in _characters(ext)]
    lcm = {}
    for c in conds:
        for pl, m in c.items():
            lcm[pl] = max(lcm.get(pl, 0), m)
    return conds, cv.Divisor(lcm)


def genus(ext, conductors=None):
    C = ext.curve
    conds = conductors if conductors is not None else conductor_data(ext)[0]
    total = sum(c.degree for c in conds)
    rhs = ext.d * (2 * C.genus - 2) + total
    if rhs % 2:
        raise ParityViolation(f"2g - 2 = {rhs} is odd")
    return rhs // 2 + 1


def _inertia_order(ext, pl):
    kern = [ext.project(g) for g in ext.rcg.level_kernel(pl, 0)]
    return subgroup_order(ext.quotient, kern)


def place_report(ext, pl):
    """(e, f, number of places above) for a place of the base field."""
    rcg = ext.rcg
    d = ext.d
    if pl in rcg.units:
        e = _inertia_order(ext, pl)
        kern = [ext.project(g) for g in rcg.level_kernel(pl, 0)]
        Qh, projh = quotient(ext.quotient, kern)
        from .rayclass import _descend
        D_hat = rcg.modulus.divisor - cv.Divisor({pl: rcg.modulus.exponent(pl)})
        frob = projh(ext.project(rcg.element(_descend(rcg, pl, D_hat))))
        f = element_order(Qh, frob)
    else:
        e = 1
        f = element_order(ext.quotient, ext.project(rcg.place_class(pl)))
    return PlaceReport(pl, e, f, d // (e * f))


def rational_point_count(ext):
    reports = [place_report(ext, pl) for pl in cv.rational_places(ext.curve)]
    return sum(r.rational_above for r in reports), reports


def full_invariants(ext):
    conds, conductor = conductor_data(ext)
    g = genus(ext, conds)
    n, reports = rational_point_count(ext)
    extra = [pl for pl in conductor.support if pl.degree > 1]
    reports += [place_report(ext, pl) for pl in extra]
    return ExtensionInvariants(ext.d, conductor, g, n, sum(c.degree for c in conds), reports)


def invariants_from_data(C, D, S, **kw):
    rcg = build_ray_class_group(C, D, **kw)
    ext = subgroup_from_split_places(rcg, S)
    return rcg, ext, full_invariants(ext)


# ---------------------------------------------------------------- splitting cross-check

@dataclass
class CrosscheckEntry:
    place: object
    roots: tuple = None
    reason: str = None

    @property
    def applicable(self):
        return self.roots is not None


def _extension_variable(expr, base):
    extra = expr.variables() - {base, "y"}
    if len(extra) != 1:
        raise ValueError(f"expected one extension variable, found {sorted(extra) or 'none'}")
    return extra.pop()


def _as_function(C, expr):
    """(a, b, den) with expr = (a + b y)/den, reducing y^2 = f - h y."""
    F = C.F
    by_y = {}
    for k, c in expr.terms.items():
        d = dict(k)
        j = d.pop("y", 0)
        if set(d) - {C.var}:
            raise ValueError("coefficient involves a foreign variable")
        i = d.get(C.var, 0)
        cur = list(by_y.get(j, P.ZERO)) + [0] * (i + 1)
        cur[i] = F.add_table[cur[i]][c]
        by_y[j] = P.trim(cur)
    top = max(by_y, default=0)
    for j in range(top, 1, -1):
        c = by_y.pop(j, P.ZERO)
        by_y[j - 2] = P.add(F, by_y.get(j - 2, P.ZERO), P.mul(F, C.f, c))
        by_y[j - 1] = P.sub(F, by_y.get(j - 1, P.ZERO), P.mul(F, C.h, c))
    return by_y.get(0, P.ZERO), by_y.get(1, P.ZERO), expr.den


class PrecisionExhausted(ArithmeticError):
    pass


def _coefficient_series(C, place, a, b, den, n):
    """(v, unit) with (a + b y)/den = t^v * unit at the place."""
    R = loc.residue_data(C, place)[0]
    vn, un = loc.laurent(C, place, a, b, n)
    vd, ud = loc.laurent(C, place, den, P.ZERO, n)
    return vn - vd, loc.s_mul(R, un, loc.s_inv(R, ud, n), n)


def _integral_form(C, place, expr, T, n):
    """Monic polynomial over R[[t]] with the same roots up to scaling by t^k.

    Dividing by the leading coefficient and substituting T = t^-k T' for
    the least k making every coefficient integral leaves the number of
    roots in the completion unchanged.
    """
    R = loc.residue_data(C, place)[0]
    coeffs = {}
    for e, c in expr.coefficients_in(T).items():
        a, b, den = _as_function(C, c)
        if P.trim(a) or P.trim(b):
            coeffs[e] = _coefficient_series(C, place, a, b, den, n)
    deg = max(coeffs)
    v_top, u_top = coeffs[deg]
    inv_top = loc.s_inv(R, u_top, n)
    k = max([0] + [-((v - v_top) // (deg - e)) for e, (v, _) in coeffs.items() if e < deg])
    out = []
    for e in range(deg + 1):
        if e not in coeffs:
            out.append((0,) * n)
            continue
        v, u = coeffs[e]
        v += k * (deg - e) - v_top
        out.append(((0,) * v + loc.s_mul(R, u, inv_top, n))[:n])
    return R, out


def _times_int(R, k, x):
    acc = 0
    for _ in range(k):
        acc = R.add(acc, x)
    return acc


def _horner(R, coeffs, r):
    acc = 0
    for c in reversed(coeffs):
        acc = R.add(R.mul(acc, r), c)
    return acc


def _taylor_shift(R, g, r):
    """Coefficients of g(X + r) for g with series coefficients and constant r."""
    a = [list(c) for c in g]
    n = len(a) - 1
    for i in range(n):
        for j in range(n - 1, i - 1, -1):
            a[j] = [R.add(x, R.mul(r, y)) for x, y in zip(a[j], a[j + 1])]
    return [tuple(c) for c in a]


def _count_roots(R, p, elems, g, prec, depth=0):
    """Number of roots in R[[t]] of g, whose coefficients are known mod t^prec."""
    if prec <= 0 or depth > 64:
        raise PrecisionExhausted("series precision exhausted")
    red = [c[0] for c in g]
    if not any(red):
        raise PrecisionExhausted("reduction vanishes to the working precision")
    dred = [_times_int(R, i % p, c) for i, c in enumerate(red)][1:]
    total = 0
    for r in elems:
        if _horner(R, red, r):
            continue
        if _horner(R, dred, r):
            total += 1          # simple root: Hensel lifting is unique
            continue
        shifted = _taylor_shift(R, g, r)
        # substitute X = t X1 and divide by the largest possible power of t
        h = [((0,) * i + c)[:prec] for i, c in enumerate(shifted)]
        vals = [loc.valuation(c) for c in h]
        m = min((v for v in vals if v is not None), default=prec)
        if m >= prec:
            raise PrecisionExhausted("root not separated at the working precision")
        total += _count_roots(R, p, elems, [c[m:] for c in h], prec - m, depth + 1)
    return total


def completion_root_count(C, text, place, precisions=(32, 64, 128, 256)):
    """Number of roots of a defining polynomial in the completion at a rational place.

    For an irreducible separable polynomial this is the number of places
    above P with e = f = 1, whatever the ramification elsewhere.
    """
    from .notation import parse_expr
    if place.degree != 1:
        raise InapplicablePlace("not a rational place")
    expr = parse_expr(C.q, text, base=C.var, synonyms=False)
    T = _extension_variable(expr, C.var)
    for n in precisions:
        R, g = _integral_form(C, place, expr, T, n)
        elems = [R.embed(c) for c in range(C.q)]
        try:
            return _count_roots(R, C.F.p, elems, g, n)
        except PrecisionExhausted:
            continue
    raise InapplicablePlace("roots not separated at the largest working precision")


def splitting_crosscheck(C, polynomials, places):
    """Per-place root counts of each defining polynomial in the completion.

    A root in F_P corresponds to a place above P with e = f = 1, so at a
    place unramified in the field the count is the number of rational places
    above it.  Places where the count cannot be certified come back with a
    reason instead of a count.
    """
    if isinstance(polynomials, str):
        polynomials = [polynomials]
    out = []
    for pl in places:
        try:
            counts = tuple(completion_root_count(C, text, pl) for text in polynomials)
            out.append(CrosscheckEntry(pl, counts))
        except InapplicablePlace as exc:
            out.append(CrosscheckEntry(pl, reason=str(exc)))
    return out
