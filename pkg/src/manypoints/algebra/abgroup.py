"""Finitely generated abelian groups in invariant-factor form.

An element is a tuple of integers: one coordinate per invariant factor
(reduced into ``[0, d_i)``) followed by one per free generator.
"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .intmat import smith

INFINITE = math.inf


@dataclass(frozen=True)
class FgAbGroup:
    rank: int
    invariants: tuple
    generator_images: tuple = ()

    def __post_init__(self):
        inv = self.invariants
        for a, b in zip(inv, inv[1:]):
            if b % a:
                raise ValueError(f"invariants {inv} do not form a divisibility chain")
        if any(d <= 1 for d in inv):
            raise ValueError("invariant factors must exceed 1")

    @property
    def ngens(self):
        return len(self.invariants) + self.rank

    @property
    def torsion_order(self):
        return math.prod(self.invariants)

    @property
    def is_finite(self):
        return self.rank == 0

    @property
    def order(self):
        return self.torsion_order if self.rank == 0 else INFINITE

    def zero(self):
        return (0,) * self.ngens

    def reduce(self, v):
        k = len(self.invariants)
        return tuple(x % d for x, d in zip(v[:k], self.invariants)) + tuple(v[k:k + self.rank])

    def add(self, a, b):
        return self.reduce([x + y for x, y in zip(a, b)])

    def neg(self, a):
        return self.reduce([-x for x in a])

    def sub(self, a, b):
        return self.reduce([x - y for x, y in zip(a, b)])

    def mul(self, n, a):
        return self.reduce([n * x for x in a])

    def combine(self, coeffs, elements):
        acc = [0] * self.ngens
        for c, e in zip(coeffs, elements):
            if c:
                for i, x in enumerate(e):
                    acc[i] += c * x
        return self.reduce(acc)

    def image(self, vector):
        """Element represented by an integer combination of the presentation generators."""
        return self.combine(vector, self.generator_images)

    def basis(self):
        return [tuple(int(i == j) for j in range(self.ngens)) for i in range(self.ngens)]

    def relation_rows(self):
        k = len(self.invariants)
        return [tuple(d if i == j else 0 for j in range(self.ngens))
                for i, d in enumerate(self.invariants)]

    def elements(self):
        if self.rank:
            raise ValueError("infinite group")
        return itertools.product(*(range(d) for d in self.invariants))

    def describe(self, sep=" + "):
        parts = [f"Z/{d}" for d in self.invariants] + ["Z"] * self.rank
        return sep.join(parts) if parts else "0"

    def __str__(self):
        return self.describe()


def group_from_presentation(n_gens, relations, modulus=None):
    """Z^n_gens / <relations> in invariant-factor form.

    With ``modulus`` m the relations are understood to include m*Z^n_gens
    (so the result is finite with exponent dividing m).
    """
    rels = [list(r) for r in relations]
    for r in rels:
        if len(r) != n_gens:
            raise ValueError("relation length does not match generator count")
    if n_gens == 0:
        return FgAbGroup(0, (), ())
    if not rels and modulus is None:
        return FgAbGroup(n_gens, (), tuple(tuple(int(i == j) for j in range(n_gens))
                                           for i in range(n_gens)))
    diag, _, V = smith(rels or [[0] * n_gens], ncols=n_gens, modulus=modulus)
    diag = list(diag) + [0] * (n_gens - len(diag))
    if modulus:
        diag = [modulus if d in (0, modulus) else d for d in diag]
    tors = [j for j, d in enumerate(diag) if d > 1]
    free = [j for j, d in enumerate(diag) if d == 0]
    invariants = tuple(diag[j] for j in tors)
    images = []
    for i in range(n_gens):
        row = V[i]
        images.append(tuple(row[j] % diag[j] for j in tors) + tuple(row[j] for j in free))
    return FgAbGroup(len(free), invariants, tuple(images))


def element_order(G, g):
    k = len(G.invariants)
    if any(g[k:]):
        return INFINITE
    n = 1
    for x, d in zip(g, G.invariants):
        n = math.lcm(n, d // math.gcd(x, d))
    return n


def quotient(G, gens):
    """Return (G/<gens>, projection) where projection maps elements of G."""
    rels = list(G.relation_rows()) + [tuple(g) for g in gens]
    Q = group_from_presentation(G.ngens, rels)

    def project(x):
        return Q.image(x)

    return Q, project


def subgroup_order(G, gens):
    if not G.is_finite:
        raise ValueError("subgroup order requested in an infinite group")
    Q, _ = quotient(G, gens)
    return G.torsion_order // Q.torsion_order


def subgroup_index(G, gens):
    Q, _ = quotient(G, gens)
    return Q.order


def contains(G, gens, x):
    """Whether x lies in <gens>."""
    Q, proj = quotient(G, gens)
    return not any(proj(x))


def _divisor_tuples(d, k):
    if k == 0:
        if d == 1:
            yield ()
        return
    for a in range(1, d + 1):
        if d % a == 0:
            for rest in _divisor_tuples(d // a, k - 1):
                yield (a,) + rest


def _in_lattice(H, v):
    v = list(v)
    for i, row in enumerate(H):
        if v[i] % row[i]:
            return False
        c = v[i] // row[i]
        if c:
            v = [x - c * y for x, y in zip(v, row)]
    return not any(v)


def subgroups_of_index(G, d):
    """All subgroups of index d of a finite group, each as a tuple of generators."""
    if not G.is_finite:
        raise ValueError("subgroup enumeration needs a finite group")
    if d < 1 or G.torsion_order % d:
        return []
    k = len(G.invariants)
    if k == 0:
        return [()] if d == 1 else []
    lattice_gens = G.relation_rows()
    out = []
    for diag in _divisor_tuples(d, k):
        slots = [(i, j) for j in range(k) for i in range(j)]
        ranges = [range(diag[j]) for (_, j) in slots]
        for choice in itertools.product(*ranges):
            H = [[0] * k for _ in range(k)]
            for i in range(k):
                H[i][i] = diag[i]
            for (i, j), c in zip(slots, choice):
                H[i][j] = c
            if all(_in_lattice(H, r) for r in lattice_gens):
                gens = tuple(sorted({G.reduce(row) for row in H} - {G.zero()}))
                out.append(gens)
    return out


@dataclass(frozen=True)
class Character:
    """A homomorphism G -> Q/Z given by its values on the coordinate basis."""

    values: tuple

    def __call__(self, x):
        return sum((v * c for v, c in zip(self.values, x)), Fraction(0)) % 1

    def is_trivial_on(self, gens):
        return all(self(g) == 0 for g in gens)

    @property
    def order(self):
        return math.lcm(1, *(v.denominator for v in self.values))


def characters_trivial_on(G, gens):
    """All characters of a finite G that vanish on <gens>; exactly [G : <gens>] of them."""
    if not G.is_finite:
        raise ValueError("characters need a finite group")
    Q, proj = quotient(G, gens)
    basis_images = [proj(e) for e in G.basis()]
    out = []
    for a in Q.elements():
        vals = []
        for img in basis_images:
            vals.append(sum((Fraction(x * y, e) for x, y, e in zip(a, img, Q.invariants)),
                            Fraction(0)) % 1)
        out.append(Character(tuple(vals)))
    return out
