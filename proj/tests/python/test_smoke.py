import pytest

import flam


def test_eval_and_trace():
    assert flam.normalize(r"(\(x:Bool). x) tt") == "tt"
    assert flam.trace(r"(\(x:Bool). x) tt") == [("beta", "tt")]
    assert flam.normalize(r"(\(x:Bool). <x, x>) (tt + ff)") == "<tt + ff, tt + ff>"


def test_check():
    assert flam.check("ctx: x:Bool\nif x then ff else tt") == "x:Bool |- if x then ff else tt : Bool"


def test_errors():
    with pytest.raises(flam.ParseError):
        flam.check("if tt then")
    with pytest.raises(flam.TypeError):
        flam.check("if * then tt else ff")
    with pytest.raises(flam.FieldError):
        flam.normalize("tt", p=4)
    with pytest.raises(flam.InternalError):
        flam.normalize("fst <tt, ff>", fuel=0)
    assert issubclass(flam.GuardError, flam.FlamError)


def test_denotations():
    neg = "ctx: x:Bool\nif x then ff else tt"
    assert flam.set_denote(neg) == ["ff", "tt"]
    assert flam.vec_denote(neg) == [[0, 0], [1, 0], [0, 1], [1, 1]]
    assert flam.matrix(r"\(x:Bool). if x then tt else ff") == [[0, 0, 1, 1], [0, 1, 0, 1]]


def test_equivalence():
    a, b = "ctx: x:Bool\ntt", "ctx: x:Bool\nif x then tt else tt"
    assert not flam.vec_equiv(a, b)
    assert flam.set_equiv(a, b)


def test_census():
    r = flam.census("Bool", model="set")
    assert r["distinct"] == 3
    assert flam.census("1", p=3)["distinct"] == 8 == flam.census_formula(3)
    assert flam.census("Bool", max=40)["distinct"] == 15


def test_synthesis_and_factoring():
    assert flam.synth_vector("Bool", [2, 1], p=3) == "2.tt + ff"
    with pytest.raises(ValueError):
        flam.synth_vector("Bool", [1], p=3)
    assert flam.vts_type("1 -> Bool") == "Bool -> Bool * Bool"
    tilde, back = flam.factor("ctx: x:Bool\nif x then ff else tt")
    assert tilde.startswith("ctx: y:Bool * Bool\n")
    assert flam.check(tilde).endswith(": Bool * Bool")
    assert flam.vec_equiv(back, "ctx: x:Bool\nif x then ff else tt")
