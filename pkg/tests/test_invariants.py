import json

import pytest

from manypoints import curve as cv
from manypoints.fixtures import BY_NAME, FIXTURES
from manypoints.invariants import (ConstantFieldExtension, _extension_variable, InfiniteIndex, character_conductor,
                                   conductor_data, full_invariants, genus, invariants_from_data,
                                   place_report, splitting_crosscheck, subgroup_extension,
                                   subgroup_from_split_places, _characters)
from manypoints.notation import parse_curve, parse_divisor, parse_expr, parse_place_set
from manypoints.rayclass import build_ray_class_group


def _ext(C, Pl, S, n):
    return subgroup_from_split_places(build_ray_class_group(C, cv.Divisor({Pl: n})), S)


@pytest.mark.parametrize("n,d,g,N", [(2, 4, 7, 10), (3, 8, 17, 18), (5, 16, 45, 34)])
def test_example_tower(ex1, n, d, g, N):
    C, Pl, S = ex1
    ext = _ext(C, Pl, S, n)
    inv = full_invariants(ext)
    assert (inv.d, inv.genus, inv.n_rational) == (d, g, N)
    assert inv.conductor == cv.Divisor({Pl: n})


def test_example_character_conductors(ex1):
    C, Pl, S = ex1
    ext = _ext(C, Pl, S, 3)
    by_order = {}
    for chi in _characters(ext):
        by_order.setdefault(chi.order, set()).add(character_conductor(ext, chi)[Pl])
    assert by_order == {1: {0}, 2: {0}, 4: {2}, 8: {3}}
    conds, _ = conductor_data(ext)
    assert sum(c.degree for c in conds) == 16


def test_example_ramified_decomposition(ex1):
    """18 = 2*8 + 8/(4*1): two split places and P with e = 4, f = 1."""
    C, Pl, S = ex1
    ext = _ext(C, Pl, S, 3)
    r = place_report(ext, Pl)
    assert (r.e, r.f, r.count) == (4, 1, 2)
    r = place_report(_ext(C, Pl, S, 2), Pl)
    assert (r.e, r.f, r.count) == (2, 1, 2)


def test_example2_index_and_counts():
    fx = BY_NAME["f2-g45"]
    C = parse_curve(fx.q, fx.curve)
    _, ext, inv = invariants_from_data(C, parse_divisor(C, fx.divisor), parse_place_set(C, fx.split))
    assert ext.d == 12 and (inv.genus, inv.n_rational) == (45, 36)
    assert all(pl.degree == 2 for pl in inv.conductor.support)


def test_whole_group_gives_base_field(ex1):
    C, Pl, _ = ex1
    rcg = build_ray_class_group(C, cv.Divisor({Pl: 3}))
    ext = subgroup_extension(rcg, rcg.group.basis())
    assert ext.d == 1 and genus(ext) == C.genus
    assert not conductor_data(ext)[1]


def test_index_errors(ex1):
    C, Pl, _ = ex1
    rcg = build_ray_class_group(C, cv.Divisor({Pl: 2}))
    with pytest.raises(InfiniteIndex):
        subgroup_from_split_places(rcg, [])
    deg2 = [pl for pl in cv.places_of_degree(C, 2)][:1]
    with pytest.raises(ConstantFieldExtension):
        subgroup_from_split_places(rcg, deg2)


@pytest.mark.parametrize("fx", [f for f in FIXTURES if not f.note], ids=lambda f: f.name)
def test_fixture_consistency(fx):
    C = parse_curve(fx.q, fx.curve)
    D = parse_divisor(C, fx.divisor)
    S = parse_place_set(C, fx.split)
    rcg, ext, inv = invariants_from_data(C, D, S)
    # conductor-discriminant: the character sum is even and non-negative
    conds, conductor = conductor_data(ext)
    total = sum(c.degree for c in conds)
    assert total == 2 * inv.genus - 2 - inv.d * (2 * C.genus - 2) and total >= 0 and total % 2 == 0
    assert conductor <= D
    # the class field has the same degree when built at its conductor
    assert subgroup_from_split_places(build_ray_class_group(C, conductor), S).d == inv.d
    # point count decomposition
    rational = [r for r in inv.splitting if r.place.degree == 1]
    assert sum(r.rational_above for r in rational) == inv.n_rational
    assert all(inv.d % (r.e * r.f) == 0 for r in inv.splitting)
    assert inv.n_rational >= inv.d * sum(1 for pl in S if pl.degree == 1)


def test_json_serialization(ex1):
    C, Pl, S = ex1
    inv = full_invariants(_ext(C, Pl, S, 2))
    obj = json.loads(inv.to_json(C, "2(x + 1, y + x + 1)", "{...}"))
    assert {"q", "curve", "D", "S_or_U", "d", "conductor", "genus", "n_rational",
            "splitting"} <= set(obj)
    assert obj["genus"] == 7 and obj["n_rational"] == 10


@pytest.mark.parametrize("fx", [f for f in FIXTURES if f.defining], ids=lambda f: f.name)
def test_defining_polynomials_agree_with_splitting_law(fx):
    """Roots in each completion match the class-field prediction at every rational place."""
    C = parse_curve(fx.q, fx.curve)
    _, ext, inv = invariants_from_data(C, parse_divisor(C, fx.divisor), parse_place_set(C, fx.split))
    predicted = {r.place: r for r in inv.splitting}
    degrees = []
    for text in fx.defining:
        e = parse_expr(C.q, text, base=C.var, synonyms=False)
        degrees.append(max(e.coefficients_in(_extension_variable(e, C.var))))
    for entry in splitting_crosscheck(C, list(fx.defining), cv.rational_places(C)):
        assert entry.applicable, entry.reason
        r = predicted[entry.place]
        full = r.e == 1 and r.f == 1
        if len(fx.defining) == 1:
            assert entry.roots[0] == (r.count if full else 0)
        else:
            # the compositum splits completely exactly when every factor field does
            assert full == all(n == deg for n, deg in zip(entry.roots, degrees))


def test_crosscheck_octic_at_split_places(ex1):
    C, _, S = ex1
    fx = BY_NAME["f2-g17"]
    out = splitting_crosscheck(C, fx.defining[0], S)
    assert [e.roots for e in out] == [(8,), (8,)]


def test_wild_witness_for_printed_f5_modulus():
    """An Artin-Schreier extension of conductor <= 2*inf in which S splits.

    For T^5 - T = g with g = y(1 - z^2): the Laurent tail of g at the inert
    infinite place has no t^-4, t^-3, t^-2 terms, so after removing
    wp(c/t) only a simple pole is left and the conductor is at most 2*inf.
    g vanishes on S (y = 0 there) but not at every rational place, so the
    extension is non-trivial.  Hence 5 divides [F_S^D : F] for D = 2*inf.
    """
    from manypoints import localization as loc
    from manypoints.algebra import poly as P
    fx = BY_NAME["f5-g45"]
    C = parse_curve(fx.q, fx.curve)
    inf = cv.infinite_places(C)[0]
    assert inf.degree == 2
    b = (1, 0, 4)                          # 1 - z^2
    v, unit = loc.laurent(C, inf, P.ZERO, b, 5)
    assert v == -5
    assert unit[1:4] == (0, 0, 0)
    S = parse_place_set(C, fx.split)
    # y has a zero at each place of S, so g does too
    assert all(loc.laurent(C, pl, P.ZERO, P.ONE, 1)[0] > 0 for pl in S)
    others = [pl for pl in cv.rational_places(C) if pl not in S and not pl.is_infinite]
    assert any(loc.laurent(C, pl, P.ZERO, b, 1)[0] == 0 and
               loc.laurent(C, pl, P.ZERO, P.ONE, 1)[0] == 0 for pl in others)
    rcg = build_ray_class_group(C, parse_divisor(C, fx.divisor))
    assert subgroup_from_split_places(rcg, S).d % 5 == 0
