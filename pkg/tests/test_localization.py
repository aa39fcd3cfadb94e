import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from manypoints import curve as cv
from manypoints import localization as loc
from manypoints.algebra import poly as P
from manypoints.algebra import subgroup_order
from manypoints.notation import parse_curve

CASES = [
    (2, "y^2 + (x^2 + x + 1)y + x^5 + x^4 + x^2 + x"),
    (3, "y^2 + 2x^6 + x^5 + 2x^4 + x^3 + 2x^2 + x + 2"),
    (4, "y^2 + (x^2 + x)y + x^5 + x^3 + a^2x^2 + a^2x"),
    (5, "y^2 + 2z^6 + 4z^4 + 3z^2 + 1"),
]


def _places(C):
    return list(cv.places_up_to(C, 2))


@pytest.mark.parametrize("q,text", CASES)
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_unit_group_order_formula(q, text, n):
    C = parse_curve(q, text)
    for pl in _places(C)[:6]:
        U = loc.unit_group(C, pl, n)
        Q = q ** pl.degree
        assert U.group.order == (Q - 1) * Q ** (n - 1)


@pytest.mark.parametrize("q,text", CASES)
def test_filtration_indices(q, text):
    """[U^(m) : U^(m+1)] = Q for m >= 1 and [U : U^(1)] = Q - 1."""
    C = parse_curve(q, text)
    n = 4
    for pl in _places(C)[:4]:
        U = loc.unit_group(C, pl, n)
        Q = q ** pl.degree
        orders = [subgroup_order(U.group, [U.group.image(v) for v in U.level_generators(m)])
                  for m in range(n + 1)]
        assert orders[0] == U.group.order and orders[n] == 1
        assert orders[0] == (Q - 1) * orders[1]
        for m in range(1, n):
            assert orders[m] == Q * orders[m + 1]


def test_example_unit_group_structures(ex1):
    C, Pl, _ = ex1
    assert loc.unit_group(C, Pl, 1).group.order == 1
    assert loc.unit_group(C, Pl, 2).group.describe() == "Z/2"
    assert loc.unit_group(C, Pl, 3).group.describe() == "Z/4"
    assert loc.unit_group(C, Pl, 5).group.describe() == "Z/2 + Z/8"


@pytest.mark.parametrize("q,text", CASES)
@given(data=st.data())
@settings(max_examples=20, deadline=None)
def test_dlog_is_a_homomorphism(q, text, data):
    C = parse_curve(q, text)
    pl = data.draw(st.sampled_from(_places(C)))
    n = data.draw(st.integers(1, 4))
    U = loc.unit_group(C, pl, n)
    R = U.R
    def unit():
        head = data.draw(st.integers(1, R.order - 1))
        tail = data.draw(st.lists(st.integers(0, R.order - 1), min_size=n - 1, max_size=n - 1))
        return (head,) + tuple(tail)
    u, v = unit(), unit()
    assert U.dlog(U.mul(u, v)) == U.group.add(U.dlog(u), U.dlog(v))
    assert U.element(U.coords(u)) == u


@pytest.mark.parametrize("q,text", CASES)
@given(data=st.data())
@settings(max_examples=10, deadline=None)
def test_laurent_valuations_match_divisors(q, text, data):
    C = parse_curve(q, text)
    coeff = st.integers(0, q - 1)
    a = P.trim(tuple(data.draw(st.lists(coeff, max_size=4))))
    b = P.trim(tuple(data.draw(st.lists(coeff, max_size=3))))
    if not a and not b:
        b = P.ONE
    D = cv.function_divisor(C, a, b)
    for pl in _places(C):
        v, unit = loc.laurent(C, pl, a, b, 2)
        assert v == D[pl]
        assert unit[0] != 0


def test_infinite_expansion_valuations(ex1):
    # deg f = 5: the infinite place is ramified, so v(x) = -2 and v(y) = -5
    C, _, S = ex1
    inf = [pl for pl in S if pl.is_infinite][0]
    assert inf.kind == "ramified"
    assert loc.laurent(C, inf, P.X, P.ZERO, 1)[0] == -2
    assert loc.laurent(C, inf, P.ZERO, P.ONE, 1)[0] == -5
