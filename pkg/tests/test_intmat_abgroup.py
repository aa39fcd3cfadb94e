import itertools
import math

from hypothesis import given, settings
from hypothesis import strategies as st

from manypoints.algebra import (FgAbGroup, characters_trivial_on, element_order,
                                group_from_presentation, quotient, subgroup_order,
                                subgroups_of_index)
from manypoints.algebra.intmat import ModularHNF, det, matmul, smith

small_ints = st.integers(-9, 9)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_smith_postcondition(M):
    diag, U, V = smith(M)
    D = matmul(matmul(U, M), V)
    for i, row in enumerate(D):
        for j, x in enumerate(row):
            assert x == (diag[i] if i == j and i < len(diag) else 0)
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert not any(diag[len(nz):])
    assert abs(det(U)) == 1 and abs(det(V)) == 1


@given(matrices(5, 3))
@settings(max_examples=100, deadline=None)
def test_group_order_matches_determinant(M):
    n = len(M[0])
    G = group_from_presentation(n, M)
    diag = smith(M, transforms=False)[0]
    if len([d for d in diag if d]) == n:
        assert G.is_finite and G.order == math.prod(d for d in diag if d)
    else:
        assert not G.is_finite


@given(matrices(4, 3), st.sampled_from([12, 30, 64]))
@settings(max_examples=100, deadline=None)
def test_modular_hnf_pivot_product_is_index(M, m):
    H = ModularHNF(len(M[0]), m)
    for r in M:
        H.insert(r)
    G = group_from_presentation(len(M[0]), M, modulus=m)
    assert H.pivot_product() == G.order


def _brute_subgroups(G):
    """All subgroups of a small finite group, as frozensets of elements.

    Every subgroup of a group of rank r is generated by r elements.
    """
    els = list(G.elements())
    return {_span(G, gens) for k in range(1, len(G.invariants) + 1)
            for gens in itertools.combinations(els, k)}


def _span(G, gens):
    span = {G.zero()}
    frontier = [G.zero()]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = G.add(x, g)
            if y not in span:
                span.add(y)
                frontier.append(y)
    return frozenset(span)


invariant_chains = st.sampled_from([(2,), (6,), (2, 2), (2, 4), (2, 6), (3, 3), (2, 8),
                                    (4, 4), (2, 12), (3, 9), (4, 8), (2, 2, 2), (2, 2, 4),
                                    (16, 16), (2, 2, 2, 2)])


@given(invariant_chains)
@settings(max_examples=30, deadline=None)
def test_subgroup_enumeration_matches_brute_force(inv):
    G = FgAbGroup(0, inv)
    assert G.order <= 256
    brute = _brute_subgroups(G)
    for d in range(1, G.order + 1):
        subs = subgroups_of_index(G, d)
        spans = {_span(G, gens) for gens in subs}
        assert len(spans) == len(subs), "duplicates in enumeration"
        assert all(len(s) * d == G.order for s in spans)
        assert spans == {s for s in brute if len(s) * d == G.order}


@given(invariant_chains)
@settings(max_examples=20, deadline=None)
def test_characters_and_orders(inv):
    G = FgAbGroup(0, inv)
    g = tuple(1 for _ in inv)
    assert element_order(G, g) == inv[-1]
    H = [G.mul(2, g)]
    Q, proj = quotient(G, H)
    assert Q.order * subgroup_order(G, H) == G.order
    chars = characters_trivial_on(G, H)
    assert len(chars) == Q.order
    assert all(chi.is_trivial_on(H) for chi in chars)
