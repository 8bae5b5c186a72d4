import json
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from so3eight.repring import (
    TANGENT,
    Character,
    RepError,
    VirtualRep,
    brute_exterior_power,
    brute_symmetric_power,
    brute_tensor,
    decompose,
    exterior_power,
    irreducible,
    irreducible_character,
    real_dimension,
    symmetric_power,
    tensor,
    to_character,
)

genuine = st.dictionaries(st.integers(0, 5), st.integers(1, 2), min_size=1, max_size=3).map(VirtualRep)
virtual = st.dictionaries(st.integers(0, 6), st.integers(-3, 3), max_size=4).map(VirtualRep)


# -- oracles and reference values---------------------------------------------------

def test_irreducibles():
    assert irreducible(2) == {2: 1} and irreducible(2).dim == 3
    assert irreducible(0).dim == 1
    assert irreducible(4).dim == 5
    with pytest.raises(RepError):
        irreducible(-1)


def test_characters():
    assert decompose(irreducible_character(1)) == irreducible(1)
    assert decompose(Character({2: 1, 0: 2, -2: 1})) == VirtualRep({2: 1, 0: 1})
    assert to_character(TANGENT).evaluate(1) == 8
    with pytest.raises(RepError):
        decompose(Character({2: 1}))


def test_clebsch_gordan_values():
    assert tensor(irreducible(3), irreducible(1)) == VirtualRep.parse("S4+S2")
    assert tensor(irreducible(4), irreducible(2)) == VirtualRep.parse("S6+S4+S2")
    for n in range(6):
        assert tensor(irreducible(0), irreducible(n)) == irreducible(n)


def test_exterior_powers_of_tangent_module():
    assert exterior_power(TANGENT, 2) == VirtualRep.parse("2S6+S4+3S2")
    assert exterior_power(TANGENT, 3) == VirtualRep.parse("S8+3S6+3S4+3S2+2S0")
    assert exterior_power(TANGENT, 4) == VirtualRep.parse("2S8+2S6+6S4+2S2+2S0")
    for k in range(9):
        assert exterior_power(TANGENT, k).dim == comb(8, k)
        assert exterior_power(TANGENT, k) == exterior_power(TANGENT, 8 - k)
    assert exterior_power(TANGENT, 9) == VirtualRep()


def test_symmetric_powers():
    assert symmetric_power(irreducible(1), 2) == irreducible(2)
    assert symmetric_power(irreducible(2), 2) == VirtualRep.parse("S4+S0")
    assert symmetric_power(TANGENT, 0) == irreducible(0)
    assert exterior_power(TANGENT, 1) == TANGENT


def test_real_dimensions():
    assert real_dimension(irreducible(2))[0] == 3
    assert real_dimension(irreducible(4))[0] == 5
    total, report = real_dimension(irreducible(1))
    assert total == 4 and report[0]["type"] == "quaternionic"


def test_plethysm_errors():
    with pytest.raises(RepError):
        exterior_power(VirtualRep.parse("S2-S0"), 2)
    with pytest.raises(RepError):
        symmetric_power(TANGENT, -1)


def test_parse_and_json():
    r = VirtualRep.parse("2S6 + S4 - 3S2")
    assert r.to_json() == {"S6": 2, "S4": 1, "S2": -3}
    assert list(r.to_json()) == ["S6", "S4", "S2"]
    assert VirtualRep.from_json(r.dumps()) == r
    assert VirtualRep.parse("0") == VirtualRep()
    assert str(r) == "2S6 + S4 - 3S2"
    with pytest.raises(RepError):
        VirtualRep.parse("S2+T4")
    with pytest.raises(RepError):
        VirtualRep.from_json(json.dumps({"X2": 1}))


# -- properties -----------------------------------------------------------------

@given(genuine, genuine)
@settings(max_examples=100, deadline=None)
def test_tensor_matches_weight_enumeration(a, b):
    assert tensor(a, b) == brute_tensor(a, b)
    assert tensor(a, b).dim == a.dim * b.dim
    assert tensor(a, b) == tensor(b, a)


@given(genuine, st.integers(0, 4))
@settings(max_examples=80, deadline=None)
def test_plethysms_match_weight_enumeration(r, k):
    assert exterior_power(r, k) == brute_exterior_power(r, k)
    assert symmetric_power(r, k) == brute_symmetric_power(r, k)
    assert exterior_power(r, k).dim == comb(r.dim, k)
    assert symmetric_power(r, k).dim == comb(r.dim + k - 1, k)


@given(genuine, genuine, st.integers(1, 3))
@settings(max_examples=60, deadline=None)
def test_exterior_power_of_sum(a, b, k):
    direct = exterior_power(a + b, k)
    split = sum((tensor(exterior_power(a, i), exterior_power(b, k - i)) for i in range(k + 1)), VirtualRep())
    assert direct == split


@given(virtual, virtual, virtual)
@settings(max_examples=100, deadline=None)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a - a == VirtualRep()
    assert tensor(a, b + c) == tensor(a, b) + tensor(a, c)
    assert tensor(tensor(a, b), c) == tensor(a, tensor(b, c))
    assert (a * b).dim == a.dim * b.dim


@given(virtual)
@settings(max_examples=100, deadline=None)
def test_character_round_trip(a):
    assert decompose(to_character(a)) == a
    assert VirtualRep.parse(str(a)) == a
    assert VirtualRep.from_json(a.to_json()) == a
