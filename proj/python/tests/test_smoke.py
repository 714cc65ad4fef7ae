from fractions import Fraction
from pathlib import Path

import pytest

import pqsurf

DATA = Path(__file__).resolve().parents[2] / "data"


def test_singularity():
    inv = pqsurf.sing_invariants("1/6")
    assert inv["hj"] == [6]
    assert inv["gamma"] == Fraction(5, 9)
    assert inv["mu"] == Fraction(5, 6)
    assert inv["index"] == 3
    assert pqsurf.hj_expand(2, 5) == [3, 2]
    assert pqsurf.dual_type("1/5") == "4/5"


def test_invalid_type_raises():
    with pytest.raises(pqsurf.PqsurfError, match="gcd"):
        pqsurf.sing_invariants("2/4")


def test_baskets():
    inv = pqsurf.basket_invariants("1/6,5/6,2x1/2")
    assert inv["basket"] == "2x1/2,1/6,5/6"
    assert (inv["l"], inv["gamma"], inv["mu"], inv["index"]) == (8, 0, Fraction(8, 3), 3)
    assert not pqsurf.basket_admissible("1/5,2/5")
    assert pqsurf.enumerate_baskets(1, 0, 2) == ["", "2x1/2", "4x1/2", "6x1/2"]


def test_signatures():
    assert pqsurf.theta("2,4,6") == Fraction(1, 12)
    assert pqsurf.curve_genus("2,4,6", 192) == 9
    assert "(0; 5,5,5)" in pqsurf.enumerate_signatures(Fraction(4, 5), "5x1/5,4x2/5")
    assert pqsurf.robavecchia_filter("2,4,6", "2,5,6", Fraction(4, 3), 3, 4) == 120
    assert pqsurf.robavecchia_filter("2,2,2", "2,4,6", Fraction(4, 3), 3, 4) is None


def test_classify_forced_rows():
    rep = pqsurf.classify(0, 2, 5, orders={5, 25}, builtin_abelian=True)
    rows = {(s["basket"], s["K2"], s["group"]["order"]) for s in rep["surfaces"]}
    assert rows == {("5x1/5,4x2/5", "-9", 5), ("5x1/5", "-1", 25)}


def test_verify_tables():
    rows = pqsurf.verify_tables(str(DATA / "tables.csv"))
    assert all(r["pass"] == (r["expected"] == "pass") for r in rows)


def test_cli():
    code, out, _ = pqsurf.run_cli(["sing", "1/6"])
    assert code == 0
    assert out.strip() == "l=1 gamma=5/9 mu=5/6 I=3 hj=[6]"
