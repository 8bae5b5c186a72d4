import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from so3eight import exforms as ef
from so3eight import linalg as la
from so3eight import liealg
from so3eight.exforms import FormError, KForm
from so3eight.repring import TANGENT, exterior_power


def forms(k):
    return st.lists(st.integers(-3, 3), min_size=comb(8, k), max_size=comb(8, k)).map(lambda c: KForm(k, tuple(c)))


degree_pairs = st.integers(0, 8).flatmap(lambda a: st.tuples(st.just(a), st.integers(0, 8 - a)))


def random_so8(rng):
    x = [[Fraction(0)] * 8 for _ in range(8)]
    for i in range(8):
        for j in range(i + 1, 8):
            v = Fraction(rng.randint(-3, 3))
            x[i][j], x[j][i] = v, -v
    return tuple(tuple(r) for r in x)


@given(degree_pairs.flatmap(lambda p: st.tuples(forms(p[0]), forms(p[1]))))
@settings(max_examples=60, deadline=None)
def test_wedge_is_graded_commutative(pair):
    a, b = pair
    sign = (-1) ** (a.degree * b.degree)
    assert a.wedge(b) == b.wedge(a).scale(sign)


@given(st.integers(0, 8).flatmap(forms))
@settings(max_examples=60, deadline=None)
def test_star_squares_to_sign_and_is_isometry(f):
    k = f.degree
    assert ef.hodge_star(ef.hodge_star(f)) == f.scale((-1) ** (k * (8 - k)))
    assert ef.hodge_star(f).norm2() == f.norm2()
    # omega ^ *omega = |omega|^2 vol
    assert f.wedge(ef.hodge_star(f)) == KForm.volume().scale(f.norm2())


def test_star_on_basis_forms():
    assert ef.hodge_star(KForm.basis(1, 2, 3)) == KForm.basis(4, 5, 6, 7, 8)
    assert ef.hodge_star(KForm.volume()) == KForm(0, (1,))
    assert ef.hodge_star(KForm(0, (1,))) == KForm.volume()


def test_invariant_dimensions_match_the_representation_ring():
    dims = [ef.invariant_subspace(k).dim for k in range(9)]
    assert dims == [1, 0, 0, 2, 2, 2, 0, 0, 1]
    assert dims == [exterior_power(TANGENT, k).get(0, 0) for k in range(9)]


def test_lie_action_basics():
    rng = random.Random(3)
    x = random_so8(rng)
    assert ef.lie_action(x, 0) == ((Fraction(0),),)
    assert ef.lie_action(x, 1) == la.mscale(-1, la.transpose(x))
    for k in range(9):
        m = ef.lie_action(x, k)
        assert sum(m[i][i] for i in range(len(m))) == 0
    with pytest.raises(FormError):
        ef.lie_action(x, 9)


def test_lie_action_is_a_derivation():
    rng = random.Random(5)
    for _ in range(5):
        x = random_so8(rng)
        a = KForm.basis(*rng.sample(range(1, 9), 2))
        b = KForm.basis(*rng.sample(range(1, 9), 3))
        assert ef.act(x, a.wedge(b)) == ef.act(x, a).wedge(b) + a.wedge(ef.act(x, b))


def test_invariant_forms_are_killed_by_g():
    gens = liealg.g_generators()
    for f in ef.locate_invariant_forms().values():
        assert all(ef.act(e, f).is_zero() for e in gens)


def test_invariant_form_supports():
    f = ef.locate_invariant_forms()
    assert ef.support_profile(f["alpha"]) == {3: 1}
    assert ef.support_profile(f["beta"]) == {1: 24}
    assert ef.support_profile(f["gamma"]) == {2: 24}
    assert ef.support_profile(f["*gamma"]) == {1: 24}
    assert f["alpha"].inner(f["beta"]) == 0
    assert f["gamma"].inner(f["*gamma"]) == 0
    assert f["*alpha"].degree == 5 and f["*beta"].degree == 5
    assert ef.form_norms(f)["alpha"] == 1
    assert ef.form_norms(f)["gamma"] == 135


def test_stabilizers():
    f = ef.locate_invariant_forms()
    assert ef.stabilizer(KForm.volume()).dim == 28
    g = liealg.build_algebra("g").space
    assert g <= ef.stabilizer(f["gamma"] + f["*gamma"].scale(7))
    assert ef.stabilizer(f["alpha"]).dim == 13
    assert liealg.is_bracket_closed(ef.stabilizer(f["gamma"] + f["*gamma"]))


def test_pencil_scan():
    pencil = ef.invariant_pencil()
    scan = ef.pencil_scan(pencil)
    assert scan["generic_dim"] == 3
    assert [(j["slope"], j["stabilizer_dim"]) for j in scan["jumps"]] == [(-1, 13), (1, 13)]
    plus = ef.stabilizer(ef.ray_form(pencil, Fraction(1)))
    minus = ef.stabilizer(ef.ray_form(pencil, Fraction(-1)))
    assert liealg.build_algebra("g").space <= plus.intersect(minus)
    assert plus == liealg.build_algebra("sp2sp1").space
    assert plus != minus


def test_pencil_rejects_bad_input():
    f = ef.locate_invariant_forms()
    with pytest.raises(FormError):
        ef.FormPencil(f["gamma"], f["gamma"].scale(2))
    with pytest.raises(FormError):
        ef.FormPencil(f["alpha"], f["gamma"])


def test_kform_json_and_errors():
    f = ef.locate_invariant_forms()["gamma"]
    assert KForm.from_json(f.to_json()) == f
    assert KForm.from_json({"degree": 2, "coeffs": {"21": "1/2"}}) == KForm.basis(1, 2).scale(Fraction(-1, 2))
    assert KForm.basis(1, 2, 5).pretty() == "e1^e2^e5"
    with pytest.raises(FormError):
        KForm(2, (1, 2))
    with pytest.raises(FormError):
        KForm.from_json({"degree": 2, "coeffs": {"11": "1"}})
    with pytest.raises(FormError):
        KForm.from_json({"degree": 2, "coeffs": {"123": "1"}})
    with pytest.raises(FormError):
        KForm.basis(1, 2).wedge(KForm.volume())
