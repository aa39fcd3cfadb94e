from types import SimpleNamespace

import pytest

from manypoints import curve as cv
from manypoints.fixtures import BY_NAME, EX1_CURVE, EX1_P
from manypoints.notation import parse_curve, parse_divisor
from manypoints.records import Interval, RecordTable
from manypoints.search import (Finding, SanityViolation, SearchConfig, _check_finding,
                               conductor_degree_bound, d_max, enumerate_moduli, genus_ceiling,
                               run_search, search_curve, triple_schedule)


def test_triple_schedule():
    t = triple_schedule(4, 40)
    assert {(2, 1, 0), (2, 4, 0), (10, 4, 0)} <= set(t)
    assert not any(d == 11 and s == 4 for d, s, _ in t)
    assert all(d * s <= 40 and d >= 2 and s + m <= 4 for d, s, m in t)
    assert {m for d, s, m in t if s == 4} == {0}
    assert triple_schedule(0, 40) == []


def test_conductor_degree_bound():
    assert conductor_degree_bound(2, 50) == 94
    assert conductor_degree_bound(3, 50) == 46
    assert conductor_degree_bound(4, 50) == 90
    assert conductor_degree_bound(7, 3) == -1


def test_d_max_and_genus_ceiling():
    assert [d_max(d) for d in (2, 3, 4, 6, 9, 12)] == [1, 1, 2, 3, 3, 6]
    sparse = RecordTable({(2, 17): Interval(17, 18)})
    # genera missing from the table are never pruned
    assert genus_ceiling(2, 2, 1, 0, sparse, 50) == 50
    full = RecordTable({(2, g): Interval(g + 2, g + 3) for g in range(1, 51)})
    assert genus_ceiling(2, 2, 1, 0, full, 50) is None
    # 8*2 + 4*1 = 20 beats lower bound g + 2 up to g = 17
    assert genus_ceiling(2, 8, 2, 1, full, 50) == 17


def test_enumerate_moduli(ex1):
    C, Pl, _ = ex1
    assert [D.degree for D in enumerate_moduli(C, 0, 0)] == [0]
    Ds = list(enumerate_moduli(C, 3, 1))
    assert cv.Divisor({Pl: 3}) in Ds
    deg2 = cv.places_of_degree(C, 2)[0]
    assert cv.Divisor({Pl: 1, deg2: 1}) in Ds
    assert all(sum(1 for p in D.support if p.degree == 1) == 1 for D in Ds)
    degrees = [D.degree for D in Ds]
    assert degrees == sorted(degrees)


@pytest.mark.parametrize("B", [0, 1, 2, 3, 4])
def test_moduli_count_is_stars_and_bars(ex1, B):
    C = ex1[0]
    places = cv.places_up_to(C, min(B, 2)) if B else []
    # number of effective divisors of degree <= B: coefficients of prod 1/(1 - t^deg)
    counts = [1] + [0] * B
    for pl in places:
        for t in range(pl.degree, B + 1):
            counts[t] += counts[t - pl.degree]
    n_rat = len(cv.rational_places(C))
    total = sum(len(list(enumerate_moduli(C, B, m))) for m in range(n_rat + 1))
    assert total == sum(counts)


def smoke_config(**kw):
    return SearchConfig(q=2, curves=[EX1_CURVE], support=[EX1_P], max_conductor_degree=3,
                        s_values=(2,), **kw)


def test_smoke_search_finds_example_records():
    findings, skipped = run_search(smoke_config())
    assert not skipped
    pairs = {(f.genus, f.n_rational) for f in findings}
    assert {(7, 10), (17, 18)} <= pairs
    best = [f for f in findings if (f.genus, f.n_rational) == (17, 18)]
    assert len(best) == 1 and best[0].improved and best[0].meets_upper
    assert best[0].old_interval == [17, 18]


def test_resume_reproduces_uninterrupted_run(tmp_path):
    full_out = tmp_path / "full.jsonl"
    run_search(smoke_config(out=str(full_out)))
    out, ckpt = tmp_path / "part.jsonl", tmp_path / "cursor.txt"
    cfg = smoke_config(out=str(out), checkpoint=str(ckpt))
    run_search(cfg, limit=2)
    assert ckpt.read_text().strip()
    run_search(cfg)
    assert out.read_text() == full_out.read_text()
    # a further resume has nothing left to do
    assert run_search(cfg)[0] == []


def test_workers_do_not_change_output():
    one = run_search(smoke_config())[0]
    two = run_search(smoke_config(workers=2))[0]
    assert one == two


def test_search_curve_and_empty_curve_list(ex1):
    cfg = smoke_config()
    assert search_curve(ex1[0], cfg) == run_search(cfg)[0]
    assert run_search(SearchConfig(q=2, curves=[]))[0] == []


def test_finding_json_round_trip():
    f = Finding(2, "c", "D", "S", 8, 17, 18, "3P", [17, 18], True, True)
    assert Finding.from_json(f.to_json()) == f


def test_sanity_violation_is_fatal():
    inv = SimpleNamespace(genus=17, n_rational=19, d=8)
    with pytest.raises(SanityViolation):
        _check_finding(2, inv, 2, 1, RecordTable.builtin())
    inv = SimpleNamespace(genus=20, n_rational=30, d=8)
    with pytest.raises(SanityViolation):
        _check_finding(2, inv, 2, 1, RecordTable())


def test_example2_finding_is_an_improvement():
    fx = BY_NAME["f2-g45"]
    C = parse_curve(fx.q, fx.curve)
    support = [str(s) for s in ("(x^2 + x + 1, y + x + 1)", "(x^2 + x + 1, y + x^2 + x)")]
    cfg = SearchConfig(q=2, curves=[fx.curve], support=support, max_conductor_degree=8,
                       s_values=(3,), d_values=(12,))
    findings = run_search(cfg)[0]
    hits = [f for f in findings if (f.genus, f.n_rational) == (45, 36)]
    assert hits and all(f.improved and f.old_interval == [33, 37] for f in hits)
    assert any(parse_divisor(C, f.conductor) == parse_divisor(C, fx.divisor) for f in hits)
