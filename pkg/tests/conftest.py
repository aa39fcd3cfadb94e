import pytest

from manypoints.fixtures import EX1_CURVE, EX1_P, EX1_S
from manypoints.notation import parse_curve, parse_place, parse_place_set


@pytest.fixture(scope="session")
def ex1():
    """The genus-2 curve over F_2 of the worked example, with its P and S."""
    C = parse_curve(2, EX1_CURVE)
    return C, parse_place(C, EX1_P), parse_place_set(C, EX1_S)
