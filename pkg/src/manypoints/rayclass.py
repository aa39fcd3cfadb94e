"""Ray divisor class groups Cl_D of hyperelliptic function fields.

Cl_D is presented on two kinds of generators: the places of small degree
coprime to D, and the generators of the local unit groups (O_P/P^n_P)^*
for P in supp D.  Relations are

* the internal relations of each local unit group,
* the image of the constants k^*, which is trivial in Cl_D,
* div(z) - iota(z mod D) for functions z = (a + b y) / e^k coprime to D whose
  divisor only involves generator places.

Here iota sends a unit u to the class of div(w) for any w = u mod D.  The
degree-zero part is finite of order h * |U_D| with
|U_D| = prod |(O_P/P^n_P)^*| / (q - 1), so relations are collected modulo
that order until a modular Hermite form reaches it exactly.
"""

import itertools
import math
from dataclasses import dataclass, field

from .algebra import poly as P
from .algebra.abgroup import FgAbGroup, element_order, group_from_presentation, quotient
from .algebra.intmat import ModularHNF
from . import curve as cv
from . import localization as loc


class CertificateNotReached(RuntimeError):
    def __init__(self, achieved, target, fun_bound):
        super().__init__(f"presented torsion order {achieved} did not reach {target} "
                         f"(fun_bound {fun_bound})")
        self.achieved, self.target, self.fun_bound = achieved, target, fun_bound


class PlaceInSupport(ValueError):
    pass


class NoSuitableFunction(RuntimeError):
    pass


DEFAULT_FUN_CEILING = 12
VERIFY_RELATIONS = 10


@dataclass(frozen=True)
class Modulus:
    divisor: object

    def __post_init__(self):
        if not self.divisor.is_effective and self.divisor:
            raise ValueError("a modulus must be effective")

    @property
    def support(self):
        return self.divisor.support

    def exponent(self, place):
        return self.divisor[place]

    @property
    def degree(self):
        return self.divisor.degree

    def __bool__(self):
        return bool(self.divisor)


def _as_modulus(D):
    return D if isinstance(D, Modulus) else Modulus(D)


@dataclass
class RayClassGroup:
    curve: object
    modulus: Modulus
    gen_places: list
    base_place: object
    units: dict
    unit_offset: dict
    group: FgAbGroup
    certificate: tuple
    aux: object
    gen_bound: int
    fun_bound: int
    n_relations: int = 0
    _index: dict = field(default_factory=dict, repr=False)

    # ---- columns
    @property
    def ncols(self):
        return len(self.gen_places) + sum(U.ngens for U in self.units.values())

    def place_column(self, place):
        return self._index.get(place)

    def element(self, vector):
        return self.group.image(vector)

    def degree_map(self, g):
        return g[-1]

    @property
    def torsion(self):
        return FgAbGroup(0, self.group.invariants)

    # ---- unit embedding
    def unit_vector(self, place, coords):
        v = [0] * self.ncols
        off = self.unit_offset[place]
        for i, c in enumerate(coords):
            v[off + i] = c
        return v

    def unit_embed(self, place, unit):
        """Image in Cl_D of a unit of (O_P/P^n_P)^* given as a series."""
        U = self.units[place]
        return self.element(self.unit_vector(place, U.coords(unit)))

    # ---- places
    def place_class(self, place):
        if place in self.units:
            raise PlaceInSupport(f"{place} lies in the support of the modulus")
        col = self.place_column(place)
        if col is not None:
            return self.element([int(i == col) for i in range(self.ncols)])
        return self.element(_descend(self, place, self.modulus.divisor))

    def level_kernel(self, place, m):
        """Image of {u = 1 mod P^m} (0 <= m <= n_P) as a list of group elements."""
        U = self.units[place]
        return [self.element(self.unit_vector(place, v)) for v in U.level_generators(m)]

    def quotient_to_modulus(self, D2):
        """(Cl_{D2}, projection from Cl_D) for D2 <= D."""
        D2 = _as_modulus(D2).divisor
        if not D2 <= self.modulus.divisor:
            raise ValueError("target modulus must divide the modulus")
        gens = []
        for pl in self.units:
            m = D2[pl]
            if m < self.modulus.exponent(pl):
                gens.extend(self.level_kernel(pl, m))
        return quotient(self.group, gens)

    def class_of_place_via_function(self, place):
        """Class of P in supp D inside Cl_{D - n_P P}, with the projection used."""
        if place not in self.units:
            raise ValueError("place is not in the support of the modulus")
        D_hat = self.modulus.divisor - cv.Divisor({place: self.modulus.exponent(place)})
        Q, proj = self.quotient_to_modulus(D_hat)
        vec = _descend(self, place, D_hat)
        return Q, proj, proj(self.element(vec))

    def describe(self):
        return self.group.describe()

    def dump(self, notation=None):
        """Text summary: generators, relation count, invariants, certificate."""
        fmt = (lambda pl: notation.format_place(self.curve, pl)) if notation else repr
        lines = [f"generators: {len(self.gen_places)} places (degree <= {self.gen_bound}), "
                 f"{sum(U.ngens for U in self.units.values())} local unit generators",
                 "places: " + ", ".join(fmt(pl) for pl in self.gen_places),
                 f"relations used: {self.n_relations} x {self.ncols}",
                 f"invariants: {self.describe()}",
                 "certificate (h, |U_D|, torsion): " + repr(self.certificate)]
        return "\n".join(lines)


# ------------------------------------------------------------------ helpers

def unit_group_order(C, D):
    D = _as_modulus(D).divisor
    if not D:
        return 1
    total = 1
    for pl, n in D.items():
        total *= loc.unit_group(C, pl, n).order
    return total // (C.q - 1)


def _aux_polynomial(C, forbidden):
    """Smallest monic irreducible whose places avoid ``forbidden`` (used as e(x))."""
    F = C.F
    for d in itertools.count(1):
        for p in P.irreducibles_of_degree(F, d):
            if not any(pl in forbidden for pl in cv.places_over(C, 0, p)):
                return p


class _Context:
    """Shared machinery for evaluating candidate functions against a modulus."""

    def __init__(self, C, D, allowed, aux):
        self.C, self.D, self.allowed, self.aux = C, D, allowed, aux
        self.inf_in_D = [pl for pl in D.support if pl.is_infinite]
        self.aux_div = cv.poly_divisor(C, aux)
        self.max_deg = max((pl.degree for pl in allowed), default=0)

    def divisor(self, a, b, targets=None):
        """(div((a + b y)/e^k), k), or None if not admissible.

        ``targets`` fixes the valuation at some places (default: 0 at the
        infinite places of supp D).  Returns None when the support leaves
        ``allowed`` (apart from the target places).
        """
        C, F = self.C, self.C.F
        targets = dict(targets or {})
        for pl in self.inf_in_D:
            targets.setdefault(pl, 0)
        # cheap smoothness test on the norm first
        a, b = P.trim(a), P.trim(b)
        Nrm = cv.norm(C, a, b) if b else P.mul(F, a, a)
        for p, _ in P.factor(F, Nrm):
            if P.deg(p) > self.max_deg:
                return None
        num = cv.function_divisor(C, a, b)
        k = 0
        inf_targets = [(pl, v) for pl, v in targets.items() if pl.is_infinite]
        if inf_targets:
            ks = set()
            for pl, v in inf_targets:
                ve = self.aux_div[pl]
                diff = num[pl] - v
                if diff % ve:
                    return None
                ks.add(diff // ve)
            if len(ks) != 1:
                return None
            k = ks.pop()
        div = num - self.aux_div * k if k else num
        for pl, v in div.items():
            if pl in targets:
                continue
            if pl not in self.allowed:
                return None
        for pl, v in targets.items():
            if div[pl] != v:
                return None
        return div, k

    def dlog(self, rcg, a, b, k, places):
        """Sum over ``places`` of the unit-column vectors of (a + b y)/e^k."""
        C = self.C
        v = [0] * rcg.ncols
        for pl in places:
            U = rcg.units[pl]
            n = U.n
            vn, un = loc.laurent(C, pl, a, b, n)
            if k:
                ve, ue = loc.laurent(C, pl, self.aux, P.ZERO, n)
                if vn - k * ve != 0:
                    raise loc.NotAUnit("function is not a unit at the modulus")
                ek = loc.s_pow(U.R, ue, abs(k), n)
                un = loc.s_mul(U.R, un, loc.s_inv(U.R, ek, n) if k > 0 else ek, n)
            elif vn:
                raise loc.NotAUnit("function is not a unit at the modulus")
            coords = U.coords(un)
            off = rcg.unit_offset[pl]
            for i, c in enumerate(coords):
                v[off + i] += c
        return v


def _candidates(C, F_hi, F_lo=1):
    """(a, b) with size max(deg a, deg b + g + 1) in [F_lo, F_hi], scaled so the
    leading coefficient of b (or of a when b = 0) is 1."""
    F = C.F
    q = C.q
    g1 = C.genus + 1
    for size in range(F_lo, F_hi + 1):
        for p in P.irreducibles_of_degree(F, size):
            yield p, P.ZERO
        for db in range(0, size - g1 + 1):
            for b in P.monic_of_degree(F, db):
                lo = size if db + g1 < size else 0
                for coeffs in itertools.product(range(q), repeat=size + 1):
                    a = P.trim(coeffs)
                    if lo and P.deg(a) < lo:
                        continue
                    yield a, b


def build_ray_class_group(C, D, gen_bound=None, fun_bound=None,
                          fun_ceiling=DEFAULT_FUN_CEILING, verify=VERIFY_RELATIONS):
    """Construct Cl_D with its order certificate."""
    D = _as_modulus(D)
    Ddiv = D.divisor
    g = C.genus
    gen_bound = gen_bound if gen_bound is not None else max(2, g + 1)
    fun_bound = fun_bound if fun_bound is not None else g + 2
    h = cv.class_number(C)
    supp = set(Ddiv.support)
    gens = [pl for pl in cv.places_up_to(C, gen_bound) if pl not in supp]
    base = next((pl for pl in gens if pl.degree == 1), None)
    if base is None:
        raise cv.CurveError("no rational place outside the modulus to anchor the degree map")
    units = {pl: loc.unit_group(C, pl, n) for pl, n in Ddiv.items()}
    U_order = unit_group_order(C, D)
    T = h * U_order
    index = {pl: i for i, pl in enumerate(gens)}
    unit_offset = {}
    off = len(gens)
    for pl, U in units.items():
        unit_offset[pl] = off
        off += U.ngens
    ncols = off
    b0 = index[base]
    reduced_cols = [i for i in range(ncols) if i != b0]

    def project(vec):
        return [vec[i] for i in reduced_cols]

    hnf = ModularHNF(ncols - 1, T)
    aux = _aux_polynomial(C, supp)
    ctx = _Context(C, Ddiv, set(gens), aux)
    stub = RayClassGroup(C, D, gens, base, units, unit_offset, None, None, aux,
                         gen_bound, fun_bound, 0, index)
    n_rel = 0
    for pl, U in units.items():
        for row in U.relations:
            hnf.insert(project(stub.unit_vector(pl, row)))
            n_rel += 1
    if units and C.q > 2:
        c = C.F.primitive
        row = ctx.dlog(stub, (c,), P.ZERO, 0, units)
        hnf.insert(project(row))
        n_rel += 1

    done = hnf.pivot_product() == T
    extra = 0
    bound = fun_bound
    start = 1
    while not done or extra < verify:
        for a, b in _candidates(C, bound, start):
            res = ctx.divisor(a, b)
            if res is None:
                continue
            div, k = res
            vec = [0] * ncols
            for pl, v in div.items():
                vec[index[pl]] = v
            uv = ctx.dlog(stub, a, b, k, units)
            vec = [x - y for x, y in zip(vec, uv)]
            hnf.insert(project(vec))
            n_rel += 1
            achieved = hnf.pivot_product()
            if achieved < T:
                raise ArithmeticError(f"presented order {achieved} fell below {T}")
            if done:
                extra += 1
                if extra >= verify:
                    break
            elif achieved == T:
                done = True
        else:
            if bound >= fun_ceiling:
                if done:
                    break
                raise CertificateNotReached(hnf.pivot_product(), T, bound)
            start = bound + 1
            bound += 1
            continue
        break
    G0 = group_from_presentation(ncols - 1, hnf.rows, modulus=T) if T > 1 else \
        FgAbGroup(0, (), tuple(() for _ in range(ncols - 1)))
    if G0.torsion_order != T:
        raise ArithmeticError("Smith form disagrees with the Hermite certificate")
    images = []
    it = iter(G0.generator_images)
    for i in range(ncols):
        if i == b0:
            images.append((0,) * len(G0.invariants) + (1,))
        else:
            deg = gens[i].degree if i < len(gens) else 0
            images.append(tuple(next(it)) + (deg,))
    group = FgAbGroup(1, G0.invariants, tuple(images))
    return RayClassGroup(C, D, gens, base, units, unit_offset, group, (h, U_order, T), aux,
                         gen_bound, bound, n_rel, index)


# ------------------------------------------------------------------ descent

def _descent_candidates(C, place, bound):
    """Functions likely to vanish to order one at ``place``."""
    F = C.F
    if place.is_infinite:
        yield from _candidates(C, bound)
        return
    p = place.p
    if place.kind == cv.INERT:
        yield p, P.ZERO
        return
    r = place.root
    g1 = C.genus + 1
    for size in range(0, bound + 1):
        for db in range(-1, size - g1 + 1):
            for b in (P.monic_of_degree(F, db) if db >= 0 else [P.ZERO]):
                a0 = P.neg(F, P.mod(F, P.mul(F, b, r), p))
                cs = P.all_polys(F, size - P.deg(p)) if size >= P.deg(p) else [P.ZERO]
                for c in cs:
                    a = P.add(F, a0, P.mul(F, c, p))
                    if max(P.deg(a), P.deg(b) + g1 if b else -1) == size:
                        yield a, b


def _descend(rcg, place, D_target, bound=None):
    """Vector (in Cl_D columns, zero on the units at ``place``) representing [place]
    in Cl_{D_target}, where ``place`` is coprime to D_target."""
    C = rcg.curve
    D_target = D_target.divisor if isinstance(D_target, Modulus) else D_target
    allowed = set(rcg.gen_places)
    ctx = _Context(C, D_target, allowed, rcg.aux)
    bound = bound or rcg.fun_bound + 2
    ctx.max_deg = max(ctx.max_deg, place.degree)
    for a, b in _descent_candidates(C, place, bound):
        if not a and not b:
            continue
        res = ctx.divisor(a, b, targets={place: 1})
        if res is None:
            continue
        div, k = res
        vec = [0] * rcg.ncols
        for pl, v in div.items():
            if pl != place:
                vec[rcg.place_column(pl)] -= v
        uv = ctx.dlog(rcg, a, b, k, [pl for pl in D_target.support])
        return [x + y for x, y in zip(vec, uv)]
    raise NoSuitableFunction(f"no function of size <= {bound} isolates {place}")
