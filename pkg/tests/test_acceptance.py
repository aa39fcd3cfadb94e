"""Acceptance criteria 1-8, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python tests/test_acceptance.py``.  Every check is exact integer equality
on data parsed from the embedded constructions.
"""

import subprocess
import sys
from pathlib import Path

import pytest

from manypoints import curve as cv
from manypoints.fixtures import BY_NAME, EX1_CURVE, EX1_P, FIXTURES
from manypoints.invariants import conductor_data, full_invariants, subgroup_from_split_places
from manypoints.notation import parse_curve, parse_divisor, parse_place, parse_place_set
from manypoints.rayclass import build_ray_class_group
from manypoints.records import BUILTIN_ROWS, RecordTable
from manypoints.search import SearchConfig, run_search

TESTS = Path(__file__).parent


def _fixture_data(fx, divisor=None):
    C = parse_curve(fx.q, fx.curve)
    D = parse_divisor(C, divisor or fx.divisor)
    S = parse_place_set(C, fx.split)
    rcg = build_ray_class_group(C, D)
    ext = subgroup_from_split_places(rcg, S)
    return C, D, rcg, ext


def _example1(n):
    C = parse_curve(2, EX1_CURVE)
    Pl = parse_place(C, EX1_P)
    rcg = build_ray_class_group(C, cv.Divisor({Pl: n}))
    return C, rcg, subgroup_from_split_places(rcg, parse_place_set(C, BY_NAME["f2-g7"].split))


def criterion_1():
    got = {n: _example1(n)[1].describe() for n in (2, 3, 5)}
    want = {2: "Z/28 + Z", 3: "Z/56 + Z", 5: "Z/2 + Z/112 + Z"}
    return got == want, f"Cl_2P, Cl_3P, Cl_5P = {got[2]}; {got[3]}; {got[5]}", []


def criterion_2():
    d2, d3 = _example1(2)[2].d, _example1(3)[2].d
    d12 = _fixture_data(BY_NAME["f2-g45"])[3].d
    return (d2, d3, d12) == (4, 8, 12), f"indices {d2}, {d3}, {d12}", []


def criterion_3():
    bad, notes = [], []
    for fx in FIXTURES:
        _, _, _, ext = _fixture_data(fx)
        inv = full_invariants(ext)
        if (inv.genus, inv.n_rational) != (fx.genus, fx.n_rational):
            bad.append(f"{fx.name}: expected ({fx.genus}, {fx.n_rational}), "
                       f"got ({inv.genus}, {inv.n_rational}) with d={inv.d}")
            if fx.reduced_divisor:
                alt = full_invariants(_fixture_data(fx, fx.reduced_divisor)[3])
                notes.append(f"{fx.name}: D = {fx.reduced_divisor} gives "
                             f"({alt.genus}, {alt.n_rational}) with d={alt.d}")
    detail = f"{len(FIXTURES) - len(bad)}/{len(FIXTURES)} fixtures exact"
    return not bad, detail, bad + notes


def criterion_4():
    t = RecordTable.builtin()
    bad = [(q, g, n) for q, g, n, lo, up in BUILTIN_ROWS
           if not (t.is_improvement(q, g, n) and (lo is None or lo < n) and n <= up)]
    return not bad, f"{len(BUILTIN_ROWS) - len(bad)}/{len(BUILTIN_ROWS)} rows improve", \
        [str(b) for b in bad]


def criterion_5():
    bad = []
    for fx in FIXTURES:
        C, D, rcg, _ = _fixture_data(fx)
        h = cv.class_number(C)
        units = 1
        for pl, n in D.items():
            Q = fx.q ** pl.degree
            units *= (Q - 1) * Q ** (n - 1)
        units //= fx.q - 1
        if rcg.group.torsion_order != h * units:
            bad.append(f"{fx.name}: torsion {rcg.group.torsion_order} != {h}*{units}")
    return not bad, f"{len(FIXTURES) - len(bad)}/{len(FIXTURES)} certificates", bad


def criterion_6():
    bad = []
    for fx in FIXTURES:
        C, _, _, ext = _fixture_data(fx)
        inv = full_invariants(ext)
        total = sum(c.degree for c in conductor_data(ext)[0])
        lhs = 2 * inv.genus - 2 - ext.d * (2 * C.genus - 2)
        if lhs != total or total < 0 or total % 2:
            bad.append(f"{fx.name}: {lhs} vs {total}")
    sums = [sum(c.degree for c in conductor_data(_example1(n)[2])[0]) for n in (2, 3)]
    ok = not bad and sums == [4, 16]
    return ok, f"identity holds for {len(FIXTURES) - len(bad)}/{len(FIXTURES)}; Example sums {sums}", bad


def criterion_7():
    cfg = SearchConfig(q=2, curves=[EX1_CURVE], support=[EX1_P], max_conductor_degree=3,
                       s_values=(2,))
    findings, skipped = run_search(cfg)
    pairs = {(f.genus, f.n_rational) for f in findings}
    top = [f for f in findings if (f.genus, f.n_rational) == (17, 18)]
    ok = {(7, 10), (17, 18)} <= pairs and len(top) == 1 and top[0].meets_upper and not skipped
    return ok, f"{len(findings)} findings {sorted(pairs)}; (17,18) meets upper bound: " \
        f"{bool(top and top[0].meets_upper)}", []


PROPERTY_SUITES = [
    "test_curve.py::test_place_degree_point_count_identity",
    "test_curve.py::test_principal_divisors_have_degree_zero",
    "test_intmat_abgroup.py::test_smith_postcondition",
    "test_intmat_abgroup.py::test_subgroup_enumeration_matches_brute_force",
    "test_localization.py::test_unit_group_order_formula",
    "test_localization.py::test_filtration_indices",
    "test_search.py::test_resume_reproduces_uninterrupted_run",
]


def criterion_8():
    args = [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider"]
    args += [str(TESTS / s) for s in PROPERTY_SUITES]
    proc = subprocess.run(args, capture_output=True, text=True, cwd=TESTS.parent)
    last = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr[-200:]
    return proc.returncode == 0, f"{len(PROPERTY_SUITES)} property suites: {last}", []


CRITERIA = {
    1: ("ray class structures", criterion_1),
    2: ("subgroup indices", criterion_2),
    3: ("fixture (genus, N) from printed data", criterion_3),
    4: ("record improvement logic", criterion_4),
    5: ("certificate h*|U_D|", criterion_5),
    6: ("conductor-discriminant consistency", criterion_6),
    7: ("search smoke test", criterion_7),
    8: ("standalone property suites", criterion_8),
}


def _report(n):
    name, fn = CRITERIA[n]
    ok, detail, extra = fn()
    line = f"CRITERION {n} ({name}): {'PASS' if ok else 'FAIL'} -- {detail}"
    lines = [line] + [f"    {e}" for e in extra]
    return ok, "\n".join(lines)


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    ok, text = _report(n)
    with capsys.disabled():
        print("\n" + text)
    assert ok, text


if __name__ == "__main__":
    results = []
    for n in sorted(CRITERIA):
        ok, text = _report(n)
        print(text)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
