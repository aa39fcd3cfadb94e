import io
import json

import pytest

from manypoints import cli
from manypoints.fixtures import EX1_CURVE, BY_NAME
from manypoints.rayclass import CertificateNotReached


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def test_verify_single_fixture():
    code, text = run("verify", "f2-g17")
    assert code == 0 and "genus 17, N 18" in text and "PASS" in text


def test_verify_reports_mismatch_with_diagnostics():
    code, text = run("verify", "f5-g45")
    assert code == 1
    assert "FAIL" in text and "expected (genus, N) = (45, 96)" in text
    assert "genus 45, N 96 (d=24)" in text


def test_verify_unknown_and_list():
    assert run("verify", "nope")[0] == 2
    code, text = run("verify", "--list")
    assert code == 0 and len(text.splitlines()) == 20


@pytest.mark.parametrize("divisor,expected", [("2(x+1, y+x+1)", "Z/28 + Z"),
                                              ("5(x+1, y+x+1)", "Z/2 + Z/112 + Z"),
                                              ("0", "Z/14 + Z")])
def test_rcg(divisor, expected):
    code, text = run("rcg", "--q", "2", "--curve", EX1_CURVE, "--divisor", divisor)
    assert code == 0 and text.splitlines()[0] == expected and "certificate:" in text


def test_invariants_example2():
    fx = BY_NAME["f2-g45"]
    code, text = run("invariants", "--q", "2", "--curve", fx.curve, "--divisor", fx.divisor,
                     "--split", fx.split)
    assert code == 0 and text.strip() == "d=12 genus=45 N=36"
    code, text = run("invariants", "--q", "2", "--curve", fx.curve, "--divisor", fx.divisor,
                     "--split", fx.split, "--json")
    assert json.loads(text)["genus"] == 45


def test_places_and_records():
    code, text = run("places", "--q", "2", "--curve", EX1_CURVE, "--max-degree", "1")
    assert code == 0 and len(text.splitlines()) == 5
    assert run("records", "query", "2", "17") == (0, "[17,18]\n")
    assert run("records", "query", "2", "3")[0] == 2


def test_records_import(tmp_path):
    path = tmp_path / "t.csv"
    path.write_text("q,g,lower,upper\n2,17,17,18\n5,26,,68\n")
    assert run("records", "import", str(path)) == (0, "2 rows ok\n")


def test_search_smoke(tmp_path):
    out = tmp_path / "f.jsonl"
    code, text = run("search", "--q", "2", "--curve", EX1_CURVE, "--support", "(x + 1, y + x + 1)",
                     "--max-conductor-degree", "3", "--s", "2", "--out", str(out))
    assert code == 0
    assert "genus=17 N=18" in text and "meets-upper" in text
    assert len(out.read_text().splitlines()) == len(text.splitlines()) - 1


def test_exit_codes(monkeypatch):
    assert run("rcg", "--q", "2", "--curve", "y^3 + x")[0] == 3
    assert run("rcg", "--q", "2")[0] == 2
    assert run("bogus")[0] == 2

    def fail(*a, **k):
        raise CertificateNotReached(1, 2, 3)
    monkeypatch.setattr(cli, "build_ray_class_group", fail)
    assert run("rcg", "--q", "2", "--curve", EX1_CURVE, "--divisor", "0")[0] == 4
