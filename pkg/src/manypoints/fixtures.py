"""Published constructions of curves with many points, as (curve, D, S) text.

Each entry gives the base curve y^2 + h y + g = 0, the modulus D and the set
S of places required to split, together with the expected genus and number
of rational places of the resulting ray class field.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Fixture:
    name: str
    q: int
    curve: str
    divisor: str
    split: str
    genus: int
    n_rational: int
    index: int = None
    group: str = None
    defining: tuple = ()
    # set when the printed data do not give the printed (genus, N)
    note: str = None
    # the same support with multiplicity one, which does give them
    reduced_divisor: str = None


EX1_CURVE = "y^2 + (x^2 + x + 1)y + x^5 + x^4 + x^2 + x"
EX1_S = "{(1/x, y/x^3), (x + 1, y + 1)}"
EX1_P = "(x + 1, y + x + 1)"

EX1_OCTIC = (
    "T^8 + (x^5 + x^4 + x + 1)T^6 + (x^7 + x^6 + x^5 + x^4 + x^3 + x^2 + x + 1)T^5 "
    "+ ((x^17 + x^15 + x^14 + x^13 + x^12 + x^10 + x^7 + x^5 + x + 1)y + (x^22 + x^20 + x^19 "
    "+ x^14 + x^12 + x^11 + x^10 + x^7 + x^5 + x^3 + x^2 + x))T^4 "
    "+ (x^11 + x^10 + x^9 + x^8 + x^3 + x^2 + x + 1)T^3 "
    "+ ((x^31 + x^29 + x^28 + x^27 + x^24 + x^23 + x^21 + x^16 + x^13 + x^10 + x^9 + x^5 + x^4 "
    "+ x^3 + x^2 + x)y + (x^35 + x^32 + x^31 + x^30 + x^29 + x^27 + x^26 + x^25 + x^24 + x^19 "
    "+ x^15 + x^12 + x^10 + x^6 + x^5 + x^4 + x^3 + x))T^2 "
    "+ ((x^33 + x^30 + x^28 + x^27 + x^26 + x^25 + x^24 + x^23 + x^21 + x^20 + x^19 + x^18 "
    "+ x^17 + x^15 + x^14 + x^13 + x^12 + x^11 + x^9 + x^4 + x^3 + 1)y + (x^37 + x^35 + x^34 "
    "+ x^33 + x^30 + x^24 + x^23 + x^16 + x^15 + x^13 + x^6 + x^3 + x^2 + x))T "
    "+ (x^54 + x^53 + x^51 + x^50 + x^47 + x^45 + x^44 + x^43 + x^42 + x^41 + x^39 + x^38 "
    "+ x^37 + x^36 + x^29 + x^24 + x^22 + x^19 + x^17 + x^16 + x^15 + x^11 + x^10 + x^7 + x^6 "
    "+ x^2)y + x^60 + x^58 + x^57 + x^55 + x^54 + x^53 + x^52 + x^51 + x^47 + x^46 + x^45 "
    "+ x^40 + x^39 + x^37 + x^35 + x^33 + x^32 + x^30 + x^29 + x^28 + x^26 + x^21 + x^19 "
    "+ x^18 + x^17 + x^16 + x^15 + x^13 + x^11 + x^9 + x^6 + x^4 + x^2 + 1"
)

F3_EX3_CURVE = "y^2 + 2x^6 + x^5 + 2x^4 + x^3 + 2x^2 + x + 2"
F3_EX3_D = "2(1/x, y/x^3+ 1) + 2(x, y + 2)"

CONDUCTOR_NOTE = (
    "the printed modulus has multiplicity 2 at a place over F_5, which admits wild "
    "(degree-5 Artin-Schreier) ramification; the printed (g, N) is the class field "
    "for the same support with multiplicity 1")

FIXTURES = [
    # worked example over F_2 and its tower
    Fixture("f2-g7", 2, EX1_CURVE, "2" + EX1_P, EX1_S, 7, 10, index=4, group="Z/28 + Z",
            defining=("T^4 + (x^3 +x)T^2 + (x^4 + 1)T + (x^6 + x^3 + x^2 + x)y + x^16 + x^12 "
                      "+ x^11 + x^10 + x^9 + x^8 + x^7 + x^5 + x^4 + 1",)),
    Fixture("f2-g17", 2, "y^2 + (x^2 + x + 1)y + x^5 + x^4 + x^2 + x", "3(z + 1, y + z + 1)",
            "{(1/z, y/z^3), (z + 1, y + 1)}", 17, 18, index=8, group="Z/56 + Z",
            defining=(EX1_OCTIC,)),
    Fixture("f2-g45-34", 2, EX1_CURVE, "5" + EX1_P, EX1_S, 45, 34, group="Z/2 + Z/112 + Z"),
    Fixture("f2-g45", 2, "y^2 + (x^3 + x + 1)y + x^6 + x^5 + x^4 + x^2",
            "(x^2 + x + 1, y + x + 1) + 3(x^2 + x + 1, y + x^2 + x)",
            "{(x, y + x), (x + 1, y), (x + 1, y + 1)}", 45, 36, index=12),
    Fixture("f2-g46", 2, "y^2 + xy + x^5 + x^3 + x^2 + x",
            "(x^3 + x + 1) + (x^2 + x + 1, y + x + 1) + (x^2 + x + 1, y + 1)",
            "{(1/x, y/x^3), (x, y), (x + 1, y), (x + 1, y + x)}", 46, 36),
    Fixture("f2-g48", 2, "y^2 + xy + x^5 + x",
            "(x^4 + x + 1, y + x^3 + x^2) + (x^4 + x + 1, y + x^3 + x^2 + x) + 2(1/x,y/x^3)",
            "{(x, y), (x + 1, y + x + 1), (x + 1, y + 1), (x^2 + x + 1)}", 48, 35),
    # F_3
    Fixture("f3-g17", 3, "y^2 + x^5 + x^4 + x^2 + 2x",
            "(1/x, y/x^3) + (x + 1, y + 1) + 2(x^2 + 1, y)",
            "{(x + 1, y + 2), (x + 2, y + 1), (x + 2, y + 2)}", 17, 28,
            defining=("T_1^4 + (x^3 + x)T_1^2 + 2x^6 + 2x^5 + x^4 + 2x^3 + 2x^2",
                      "T_2^2 + (x + 1)y + x^3 + x^2 + x + 1")),
    Fixture("f3-g22", 3, F3_EX3_CURVE, F3_EX3_D,
            "{(x + 1, y + x + 2), (x + 2, y + x), (x + 2, y + x + 1), "
            "(x^5 + x^3 + x + 1, y + 2x^4 + x^3 + 2x)}", 22, 33,
            defining=("T_1^3 + 2T_1 + (x^3 + 2x^2 + x + 1 + 1/x)y + x^6 + 2x^2 + 2x + 1/x",
                      "T_2^3 + 2T_2 + (x^4 + 2x^3 + x^2 + 2)y/x + (x^7 + 2x^4 + 2x^3 + 2x + 2)/x")),
    Fixture("f3-g33", 3, "y^2 + 2x^6 + x^5 + 2x^4 + x",
            "(x^2 + 1, y + x + 2) + (x^2 + 1, y + 2x + 1)",
            "{(1/x, y/x^3 + 1), (1/x, y/x^3 + 2), (x, y)}", 33, 48),
    Fixture("f3-g46", 3, F3_EX3_CURVE, F3_EX3_D,
            "{(x + 1, y + x + 2), (x + 2, y + x), (x + 2, y + x + 1)}", 46, 60),
    # F_4
    Fixture("f4-g41", 4, "y^2 + (x^2 + x)y + x^5 + x^3 + a^2x^2 + a^2x",
            "(x + a, y + x) + (x + a, y + a^2)",
            "{(1/x, y/x^3), (x, y), (x + 1, y)}", 41, 72),
    # F_5
    Fixture("f5-g8", 5, "y^2 + 4z^6 + 2z^5 + 2z^3 + z^2 + 2z",
            "(z^2 + 2z + 3, y + 4z + 4) + (z^2 + 4z + 2, y + 3z + 2)",
            "{(1/z, y/z^3 + 1), (1/z, y/z^3 + 4), (z, y), (z + 3, y + 4), (z + 1, y + 4), "
            "(z + 2, y + 2), (z + 4, y + 2), (z + 4, y + 3)}", 8, 24,
            defining=("T^3 + ((4z + 3)y + (3z^4 + 3z^2 + 2))T + (4z^3 + 3z^2 + 4z + 2)y + 4z^6 "
                      "+ z^4 + z^3 + z^2 + 2z + 2",)),
    Fixture("f5-g10", 5, "y^2 + 4z^6 + 2z^5 + 3z^3 + 4z^2 + 1", "3(z + 3, y + z)",
            "{(1/z, 1/z^3y + 1), (1/z, y/z^3 + 4), (z, y + z + 2), (z + 3, y + z + 1), "
            "(z + 1, y + 1), (z + 4, y + 4)}", 10, 31,
            defining=("T^5 + 4T + (4z^3 + z^2 + 3z + 4)y/(z + 3) + (z^6 + 3z^5 + 4z^2 + 2z + 3)"
                      "/(z + 3)",)),
    Fixture("f5-g12", 5, "y^2 + 3z^6 + z^5 + 2z^4 + 4z^3 + 4z^2 + 3z + 4", "2(1/z)",
            "{(z, y + 1), (z, y + 4), (z + 2, y + z + 3), (z + 2, y + z + 1), (z + 4, y + 2), "
            "(z + 4, y + 3)}", 12, 36,
            defining=("x^2 + 4z^3 + 2z^2 + 4z + 1",
                      "w^3 + (3z^3 + z^2 + 2z + 1)w + z^5 + 3z^3 + 3z")),
    Fixture("f5-g26", 5, "y^2 + z^6 + z^5 + 4z^4 + 4z^3 + 4z^2 + z + 1",
            "(z^2 + z + 1, y + 3) + (z^2 + 3, y + 3z + 2)",
            "{(1/z, y/z^3 + 2), (z, y + 2), (z + 3, y + z), (z + 2, y + 4)}", 26, 60),
    Fixture("f5-g35", 5, "y^2 + z^6 + 4z^5 + 2z^4 + 2z^2 + 4z + 1",
            "(z^2 + z + 1, y + 2) + (z + 1)",
            "{(1/z, y/z^3 + 2), (z, y + 2), (z + 3, y + 2), (z + 2, y + z + 1), (z + 4, y + 1), "
            "(z + 4, y + 4)}", 35, 72),
    Fixture("f5-g37", 5, "y^2 + z^5 + z^4 + 2z^3 + z^2 + 4z", "3(z, y)",
            "{(1/z, y/z^3), (z + 1, y), (z + 4, y + 1), (z + 4, y + 4)}", 37, 80),
    Fixture("f5-g40", 5, "y^2 + 2z^5 + z^4 + 2", "(z + 3) + (z)",
            "{(1/z, y/z^3), (z + 1, y + 2), (z + 1, y + 3), (z + 4, y)}", 40, 72),
    Fixture("f5-g45", 5, "y^2 + 2z^6 + 4z^4 + 3z^2 + 1", "2(1/z)",
            "{(z + 3, y), (z + 1, y), (z + 2, y), (z + 4, y)}", 45, 96,
            note=CONDUCTOR_NOTE, reduced_divisor="(1/z)"),
    Fixture("f5-g46", 5, "y^2 + z^6 + 2z^5 + 2z^4 + z^3 + 2z^2 + 2z + 1",
            "2(z^2 + 4z + 2, y + z^2 + 4)",
            "{(z, y + 2), (z + 3, y + 3), (z + 1, y + 3)}", 46, 81,
            note=CONDUCTOR_NOTE, reduced_divisor="(z^2 + 4z + 2, y + z^2 + 4)"),
]

BY_NAME = {fx.name: fx for fx in FIXTURES}
