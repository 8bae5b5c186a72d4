"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest -v tests/test_acceptance.py`` or ``python tests/test_acceptance.py``.
Expected values are literals; nothing here is derived from the code under test.
Criteria 6 and 9 fail on a correct build (see the README); they are left failing.
"""
import sys
from fractions import Fraction

from so3eight import charclass as cc
from so3eight import exforms as ef
from so3eight import liealg
from so3eight import torsion as t
from so3eight.charclass import GradedPoly
from so3eight.linalg import Subspace
from so3eight.repring import (
    TANGENT,
    VirtualRep,
    brute_exterior_power,
    exterior_power,
    real_dimension,
)

R = VirtualRep.parse
CRITERION_LINES: list[str] = []


def record(number: int, name: str, results: dict) -> None:
    """Print and collect the criterion line, then fail on any false clause."""
    failed = [k for k, ok in results.items() if not ok]
    status = "PASS" if not failed else "FAIL"
    line = f"criterion {number}: {status} - {name}"
    if failed:
        line += f" (failed: {', '.join(failed)})"
    CRITERION_LINES.append(line)
    print(line, flush=True)
    assert not failed, line


def test_criterion_1_second_exterior_power():
    l2 = exterior_power(TANGENT, 2)
    record(1, "second exterior power of S2+S4", {
        "decomposition": l2 == R("2S6+S4+3S2"),
        "dim 28": real_dimension(l2)[0] == 28,
    })


def test_criterion_2_third_to_fifth_exterior_powers():
    l3, l4, l5 = (exterior_power(TANGENT, k) for k in (3, 4, 5))
    inv3 = ef.invariant_subspace(3)
    inv5 = ef.invariant_subspace(5)
    starred = [ef.hodge_star(ef.KForm(3, v)).coeffs for v in inv3.rows]
    record(2, "third to fifth exterior powers", {
        "L3": l3 == R("S8+3S6+3S4+3S2+2S0"),
        "L3 dim 56": real_dimension(l3)[0] == 56,
        "L4": l4 == R("2S8+2S6+6S4+2S2+2S0"),
        "L4 dim 70": real_dimension(l4)[0] == 70,
        "L5 = L3": l5 == l3,
        "star maps invariant 3-forms onto invariant 5-forms": Subspace(56, starred) == inv5,
    })


def test_criterion_3_full_torsion_space():
    row = t.full_torsion_space()
    concrete = t.concrete_torsion("full")
    record(3, "full torsion space", {
        "decomposition": row.rep == R("2S10+5S8+8S6+10S4+8S2+3S0"),
        "dim 200": row.real_dim == 200,
        "3 invariants": row.invariants == 3,
        "tensor Casimir agrees": concrete == row.rep,
    })


def test_criterion_4_relative_torsion_rows():
    rows = t.torsion_table().rows
    record(4, "relative torsion rows", {
        "so3so5": (rows["so3so5"].multiplicities, rows["so3so5"].real_dim) == ((1, 3, 5, 6, 5, 2), 120),
        "sp2sp1": (rows["sp2sp1"].multiplicities, rows["sp2sp1"].real_dim) == ((1, 3, 5, 6, 5, 2), 120),
        "psu3": (rows["psu3"].multiplicities, rows["psu3"].real_dim) == ((2, 4, 6, 8, 6, 2), 160),
        "erratum note against 158": rows["psu3"].printed_dim == 158 and "158" in (rows["psu3"].note or ""),
    })


def test_criterion_5_pairwise_intersections():
    g = liealg.build_algebra("g").space
    spaces = {k: liealg.build_algebra(k).space for k in ("so3so5", "su3", "sp2sp1")}
    pairs = (("so3so5", "su3"), ("su3", "sp2sp1"), ("sp2sp1", "so3so5"))
    results = {"g dim 3": g.dim == 3}
    for a, b in pairs:
        meet = spaces[a].intersect(spaces[b])
        results[f"{a} meet {b} = g"] = meet == g and meet.dim == 3
    record(5, "pairwise intersections equal g", results)


def test_criterion_6_complements_as_exact_sums():
    kinds = ("so3so5", "su3", "sp2sp1")
    models = {k: liealg.build_algebra(k) for k in kinds}
    quot = {k: liealg.quotient_space(models[k]) for k in kinds}
    g_perp = liealg.orth_complement(liealg.build_algebra("g").space)
    results = {}
    for i, k in enumerate(kinds):
        j, l = kinds[(i + 1) % 3], kinds[(i + 2) % 3]
        perp = liealg.orth_complement(models[k].space)
        results[f"{k} complement = quotients of {j} and {l}"] = perp == quot[j] + quot[l]
    total = quot["so3so5"] + quot["su3"] + quot["sp2sp1"]
    results["g complement = sum of the three quotients"] = total == g_perp
    results["dims 25 = 10+5+10"] = (g_perp.dim, [quot[k].dim for k in kinds]) == (25, [10, 5, 10])
    record(6, "complements as exact subspace sums", results)


def test_criterion_7_quotient_isotypes():
    q = {k: liealg.quotient_isotypes(liealg.build_algebra(k)) for k in ("so3so5", "su3", "sp2sp1")}
    su3_perp = liealg.isotypes_of(liealg.orth_complement(liealg.build_algebra("su3").space))
    record(7, "quotient isotypes", {
        "so3so5/g": q["so3so5"] == R("S2+S6"),
        "su3/g": q["su3"] == R("S4"),
        "sp2sp1/g": q["sp2sp1"] == R("S6+S2"),
        "su3 complement": su3_perp == R("2S6+2S2"),
    })


def test_criterion_8_forms_and_pencil():
    dims = [ef.invariant_subspace(k).dim for k in (3, 4, 5)]
    pencil = ef.invariant_pencil()
    scan = ef.pencil_scan(pencil)
    g = liealg.build_algebra("g").space
    results = {
        "invariant dims (2,2,2)": dims == [2, 2, 2],
        "two jump rays": len(scan["jumps"]) == 2,
    }
    for ray in scan["jumps"]:
        stab = ef.stabilizer(ef.ray_form(pencil, ray["slope"]))
        tag = f"ray {ray['slope']}"
        results[f"{tag} dim 13"] = stab.dim == 13
        results[f"{tag} bracket-closed"] = liealg.is_bracket_closed(stab)
        results[f"{tag} ideals 10+3"] = sorted(i.dim for i in liealg.ideals(stab)) == [3, 10]
        results[f"{tag} contains g"] = g <= stab
    record(8, "invariant forms and the stabiliser pencil", results)


def test_criterion_9_characteristic_classes():
    ch = cc.chern_character(cc.T_C)
    p1, p2 = cc.pontrjagin(cc.T_C)
    p1sq = p1 * p1
    euler = (4 * p2 - p1sq) * Fraction(1, 8)
    x2, x4 = GradedPoly.monomial(2), GradedPoly.monomial(4)
    constrained_p1 = GradedPoly.monomial(2, 1)
    constrained_p2 = GradedPoly.monomial(4, Fraction(1, 4))
    record(9, "characteristic classes", {
        "ch = 8+6x^2+3x^4": ch == GradedPoly([8, 0, 6, 0, 3]),
        "p1 = 6x^2": p1 == 6 * x2,
        "p2 = 9x^4": p2 == 9 * x4,
        "4p2 = p1^2": 4 * p2 == p1sq,
        "e = 0": euler.is_zero(),
        "bound 8640": cc.divisibility_bound()["bound"] == 8640,
        "sigma = p1^2/60": cc.l_genus(constrained_p1, constrained_p2)[4] == Fraction(1, 60),
        "Ahat2 = p1^2/960": cc.a_hat_genus(constrained_p1, constrained_p2)[4] == Fraction(1, 960),
    })


def test_criterion_10_case_families():
    fams = {f.tag: f.to_json() for f in t.enumerate_invariant_cases()}
    sample = t.sample_cases(10_000, seed=0)
    d = {k: v["differentials"] for k, v in fams.items()}
    record(10, "invariant-torsion case families", {
        "four families": list(fams) == ["I", "II", "III", "IV"],
        "zero patterns": [fams[k]["zero"] for k in fams] == [
            ["a22", "b21"], ["a11"], ["a11", "a22", "b21"], ["a11", "a22", "a12"]],
        "family II relation": fams["II"]["relations"] == ["a12*b21 + a22*b22 = 0"],
        "I differentials": (d["I"]["d(alpha)"], d["I"]["d(beta)"], d["I"]["d(gamma)"], d["I"]["d(*gamma)"])
        == ("a11*gamma", "a12*gamma", "0", "a11*m*(*alpha) + b22*(*beta)"),
        "II differentials": (d["II"]["d(beta)"], d["II"]["d(gamma)"], d["II"]["d(*gamma)"])
        == ("a12*gamma + a22*(*gamma)", "b21*(*beta)", "-a12*b21/a22*(*beta)"),
        "III differentials": (d["III"]["d(beta)"], d["III"]["d(gamma)"], d["III"]["d(*gamma)"])
        == ("a12*gamma", "0", "b22*(*beta)"),
        "IV differentials": (d["IV"]["d(alpha)"], d["IV"]["d(beta)"], d["IV"]["d(gamma)"], d["IV"]["d(*gamma)"])
        == ("0", "0", "b21*(*beta)", "b22*(*beta)"),
        "rank of A": [fams[k]["rank_A"] for k in fams] == [1, 1, 1, 0],
        "rank of B in I": fams["I"]["ranks_B"] == [1],
        "10^4 samples classified once": sample["unclassified_or_ambiguous"] == 0
        and sum(sample["counts"].values()) == 10_000,
        "BA = 0 for every sample": sample["all_ba_zero"],
        "every family hit": sample["every_family_hit"],
    })


def test_criterion_11_oracle_equivalence():
    results = {}
    for k in range(6):
        results[f"plethysm k={k}"] = exterior_power(TANGENT, k) == brute_exterior_power(TANGENT, k)
    results["R8"] = liealg.casimir_isotypes(liealg.g_generators()) == R("S2+S4")
    results["so8"] = liealg.isotypes_of(liealg.build_algebra("so8").space) == exterior_power(TANGENT, 2)
    predicted = {"g": "2S6+S4+2S2", "so3so5": "S6+S4+S2", "su3": "2S6+2S2", "sp2sp1": "S6+S4+S2"}
    for kind, expected in predicted.items():
        perp = liealg.orth_complement(liealg.build_algebra(kind).space)
        results[f"{kind} complement"] = liealg.isotypes_of(perp) == R(expected)
    record(11, "oracle equivalence", results)


if __name__ == "__main__":
    failures = 0
    for name, fn in sorted(globals().items(), key=lambda kv: int(kv[0].split("_")[2]) if kv[0].startswith("test_criterion_") else 0):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failures += 1
    sys.exit(1 if failures else 0)
