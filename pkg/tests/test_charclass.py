from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from so3eight import charclass as cc
from so3eight.charclass import GradedPoly, WeightBundle

fracs = st.fractions(min_value=-5, max_value=5, max_denominator=6)
polys = st.lists(fracs, min_size=5, max_size=5).map(GradedPoly)
half_weights = st.integers(-6, 6).map(lambda n: Fraction(n, 2))
bundles = st.lists(half_weights, min_size=1, max_size=6).map(WeightBundle)
self_conjugate = st.lists(half_weights, max_size=4).map(lambda ws: WeightBundle(list(ws) + [-w for w in ws]))
rank4 = st.lists(st.integers(-3, 3), min_size=4, max_size=4).map(WeightBundle)


# -- truncated ring ------------------------------------------------------------------

@given(polys, polys, polys)
@settings(max_examples=100, deadline=None)
def test_graded_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == GradedPoly()
    assert a * 1 == a


def test_truncation_and_printing():
    assert cc.X ** 5 == GradedPoly()
    assert str(GradedPoly([8, 0, 6, 0, Fraction(3, 2)])) == "8 + 6x^2 + (3/2)x^4"
    assert str(GradedPoly([0, -1])) == "-x"
    assert str(GradedPoly()) == "0"
    assert GradedPoly([1, 0, Fraction(1, 2)]).to_json() == {"x^0": "1/1", "x^2": "1/2"}


# -- Chern character and Pontrjagin classes ------------------------------------------

def test_chern_character_examples():
    assert cc.chern_character(WeightBundle([0])) == 1
    assert cc.chern_character(WeightBundle([1, -1])) == GradedPoly([2, 0, 1, 0, Fraction(1, 12)])
    # Power-sum oracle for the tangent weights {+-2, +-1, +-1, 0, 0}: ch_k = sum w^k / k!
    ch = cc.chern_character(cc.T_C)
    assert ch == GradedPoly([8, 0, 6, 0, Fraction(36, 24)])


def test_pontrjagin_examples():
    p1, p2 = cc.pontrjagin(cc.T_C)
    assert (p1, p2) == (GradedPoly.monomial(2, 6), GradedPoly.monomial(4, 9))
    assert 4 * p2 == p1 * p1
    assert cc.pontrjagin(WeightBundle([0] * 8)) == (GradedPoly(), GradedPoly())
    with pytest.raises(ValueError):
        cc.pontrjagin(WeightBundle([1, 1]))


@given(self_conjugate)
@settings(max_examples=100, deadline=None)
def test_pontrjagin_matches_chern_character(b):
    p1, p2 = cc.pontrjagin(b)
    ch = cc.chern_character(b)
    assert ch[2] == p1[2]
    assert ch[4] == (p1 * p1 - 2 * p2)[4] / 12
    assert cc.pontrjagin_from_chern_character(ch) == (p1, p2)
    # p = (-1)^k c_{2k} of the complexification
    c = cc.chern_class(b)
    assert p1[2] == -c[2] and p2[4] == c[4]


@given(bundles, bundles)
@settings(max_examples=60, deadline=None)
def test_chern_character_is_a_ring_map(a, b):
    assert cc.chern_character(a + b) == cc.chern_character(a) + cc.chern_character(b)
    assert cc.chern_character(a * b) == cc.chern_character(a) * cc.chern_character(b)
    assert cc.chern_class(a + b) == cc.chern_class(a) * cc.chern_class(b)


# -- genera --------------------------------------------------------------------------

@given(st.integers(-20, 20))
def test_genera_under_the_quaternionic_constraint(t):
    p1 = GradedPoly.monomial(2, t)
    p2 = GradedPoly.monomial(4, Fraction(t * t, 4))
    p1sq = (p1 * p1)[4]
    assert cc.genus_eval("l", p1, p2)[4] == p1sq / 60
    assert cc.genus_eval("ahat", p1, p2)[4] == p1sq / 960


def test_trivial_bundle_genera_are_constant():
    p1, p2 = cc.pontrjagin(WeightBundle([0] * 8))
    c = cc.chern_class(WeightBundle([0] * 4))
    for which in ("l", "a", "todd"):
        assert cc.genus_eval(which, p1, p2, c) == 1
    with pytest.raises(ValueError):
        cc.genus_eval("todd", p1, p2)
    with pytest.raises(ValueError):
        cc.genus_eval("w", p1, p2)


@given(rank4)
@settings(max_examples=100, deadline=None)
def test_todd_product_matches_chern_expansion(b):
    assert cc.todd_product(b) == cc.todd_standard(cc.chern_class(b))


def test_todd_display_agrees_on_the_tangent_bundle():
    check = cc.todd_cross_check()
    assert check["constraint_holds"] and check["agree"]
    assert check["product"] == "1 - (1/2)x^2 + (11/80)x^4"


def test_report_values():
    r = cc.report()
    assert r["p1"]["text"] == "6x^2" and r["p2"]["text"] == "9x^4"
    assert r["relations"]["four_p2_eq_p1sq"] and r["relations"]["euler_zero"]
    assert r["genera"]["sigma_over_p1sq"] == "1/60"
    assert r["genera"]["Ahat2_over_p1sq"] == "1/960"


# -- integrality ---------------------------------------------------------------------

def test_divisibility_bound():
    assert cc.todd_factor() == 2880
    assert cc.divisibility_bound() == {"todd_factor": 2880, "psu3_factor": 216, "bound": 8640}


def test_obstruction_examples():
    assert cc.obstruction_check(0, 0, 0)["admissible"]
    assert cc.obstruction_check(0, 8640, 2160)["admissible"]
    bad = cc.obstruction_check(3, 36, 9)
    assert not bad["admissible"] and not bad["relations"]["euler_zero"]
    assert not cc.obstruction_check(0, 4320, 1080)["admissible"]


# -- almost complex structures -------------------------------------------------------

def test_acs_examples():
    assert cc.acs_classify(WeightBundle([2, -1, 1, 0])) == "quaternionic"
    assert cc.acs_classify(WeightBundle([2, 1, 1, 0])) == "non-quaternionic"
    assert cc.acs_classify(WeightBundle([2, -1, -1, 0])) == "non-quaternionic"
    rep = cc.acs_report()
    assert rep["conjugate_count"] == 3
    assert rep["conjugates"]["-J''"] == "quaternionic"
    with pytest.raises(ValueError):
        cc.acs_classify(WeightBundle([2, 2, 1, 0]))


def test_twistor_weights():
    assert cc.twistor_weights() == WeightBundle([2, 1, 0, -1])
    tw = cc.twistor_weights()
    assert (tw + tw.conjugate()).multiset() == cc.T_C.multiset()


def test_weight_bundle_parse():
    assert WeightBundle.parse("2, -1, 1/2") == WeightBundle([Fraction(1, 2), 2, -1])
    assert WeightBundle.parse("") == WeightBundle(())
    assert str(WeightBundle([0, 2])) == "2,0"
