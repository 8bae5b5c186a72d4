"""Intrinsic-torsion module arithmetic and the invariant-torsion case solver.

Torsion spaces are T* (x) h^perp with T* = S^2 + S^4 the tangent module of
the principal SO(3).  Everything is computed twice: symbolically in the
representation ring and concretely from Casimir kernels on R^8 (x) so(8).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product

import sympy

from so3eight import linalg as la
from so3eight import liealg
from so3eight.linalg import Subspace
from so3eight.repring import (
    TANGENT,
    VirtualRep,
    exterior_power,
    irreducible,
    real_dimension,
    symmetric_power,
    tensor,
)


class TorsionError(ValueError):
    pass


GROUPS = {"so3so5": "so3so5", "psu3": "su3", "sp2sp1": "sp2sp1"}
PRINTED_DIMS = {"so3so5": 120, "psu3": 158, "sp2sp1": 120, "full": 200}
ERRATUM_PSU3 = (
    "printed dimension 158 disagrees with its own multiplicity row "
    "2*11 + 4*9 + 6*7 + 8*5 + 6*3 + 2*1 = 160; 160 is asserted"
)

# Cyclic labels: P, R, Q and the algebra each one stands for.
LABELS = {"P": "so3so5", "R": "su3", "Q": "sp2sp1"}


def _algebra(tag: str) -> str:
    try:
        return GROUPS[tag]
    except KeyError:
        raise TorsionError(f"unknown group tag {tag!r}; expected one of {sorted(GROUPS)}") from None


@dataclass(frozen=True)
class TorsionRow:
    group: str
    rep: VirtualRep
    real_dim: int
    invariants: int
    printed_dim: int | None = None
    note: str | None = None

    @property
    def multiplicities(self) -> tuple:
        return tuple(self.rep[n] for n in range(10, -1, -2))

    def to_json(self) -> dict:
        out = {
            "group": self.group,
            "rep": self.rep.to_json(),
            "multiplicities": list(self.multiplicities),
            "real_dim": self.real_dim,
            "invariants": self.invariants,
        }
        if self.printed_dim is not None:
            out["printed_dim"] = self.printed_dim
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class TorsionTable:
    rows: dict

    def to_json(self) -> dict:
        return {"rows": {k: r.to_json() for k, r in self.rows.items()}, "columns": ["S10", "S8", "S6", "S4", "S2", "S0"]}

    def text(self) -> str:
        lines = [f"{'group':<8} {'S10':>4} {'S8':>4} {'S6':>4} {'S4':>4} {'S2':>4} {'S0':>4} {'dim':>5}"]
        for k, r in self.rows.items():
            m = " ".join(f"{x:>4}" for x in r.multiplicities)
            lines.append(f"{k:<8} {m} {r.real_dim:>5}")
            if r.note:
                lines.append(f"  erratum: {r.note}")
        return "\n".join(lines)


def _row(group: str, perp: VirtualRep, note=None) -> TorsionRow:
    rep = tensor(TANGENT, perp)
    dim, _ = real_dimension(rep)
    return TorsionRow(group, rep, dim, rep[0], PRINTED_DIMS.get(group), note)


@lru_cache(maxsize=None)
def _perp_isotypes(alg: str, basis=liealg.REFERENCE) -> VirtualRep:
    return liealg.isotypes_of(liealg.orth_complement(liealg.build_algebra(alg, basis).space), basis)


def full_torsion_space(basis=liealg.REFERENCE) -> TorsionRow:
    """T* (x) g^perp, with g^perp decomposed by Casimir kernels."""
    return _row("full", _perp_isotypes("g", basis))


def relative_torsion(group: str, basis=liealg.REFERENCE) -> TorsionRow:
    alg = _algebra(group)
    return _row(group, _perp_isotypes(alg, basis), ERRATUM_PSU3 if group == "psu3" else None)


def torsion_table(basis=liealg.REFERENCE) -> TorsionTable:
    rows = {g: relative_torsion(g, basis) for g in GROUPS}
    rows["full"] = full_torsion_space(basis)
    return TorsionTable(rows)


def concrete_torsion(group: str, basis=liealg.REFERENCE) -> VirtualRep:
    """Isotypes of R^8 (x) h^perp from the tensor-product Casimir (the self-oracle)."""
    alg = "g" if group == "full" else _algebra(group)
    return liealg.cotangent_isotypes(liealg.orth_complement(liealg.build_algebra(alg, basis).space), basis)


def table_consistency(basis=liealg.REFERENCE) -> dict:
    """Per row: symbolic vs concrete isotypes, and 8 * dim(perp) vs real dimension."""
    out = {}
    for g, row in torsion_table(basis).rows.items():
        alg = "g" if g == "full" else _algebra(g)
        perp = liealg.orth_complement(liealg.build_algebra(alg, basis).space)
        concrete = concrete_torsion(g, basis)
        out[g] = {
            "symbolic_equals_concrete": concrete == row.rep,
            "dim_matches": 8 * perp.dim == row.real_dim,
        }
    return out


# -- cyclic identities in R^8 (x) so(8) --------------------------------------

AMBIENT = liealg.DIM * liealg.SO8_DIM


def cotangent_tensor(sub: Subspace) -> Subspace:
    """T* (x) sub as a subspace of R^8 (x) so(8), coordinates a * 28 + t."""
    vecs = []
    for a in range(liealg.DIM):
        for r in sub.rows:
            v = [Fraction(0)] * AMBIENT
            v[a * liealg.SO8_DIM:(a + 1) * liealg.SO8_DIM] = r
            vecs.append(v)
    return Subspace(AMBIENT, vecs)


def _third(x: str, y: str) -> str:
    (z,) = set(LABELS) - {x, y}
    return z


def verify_cyclic_identities(basis=liealg.REFERENCE) -> dict:
    """Check the cyclic relations between relative torsion components.

    tau^X(Y) lives in T* (x) (z/g) with Z the remaining label.  Reports, for
    every ordered pair and every label, the virtual-representation identity,
    the direct-sum certificate and the exact subspace equality.
    """
    quots = {k: liealg.quotient_space(liealg.build_algebra(v, basis), basis) for k, v in LABELS.items()}
    comp = {k: cotangent_tensor(q) for k, q in quots.items()}
    comp_rep = {k: tensor(TANGENT, liealg.isotypes_of(q, basis)) for k, q in quots.items()}
    perps = {k: liealg.orth_complement(liealg.build_algebra(v, basis).space) for k, v in LABELS.items()}
    torsion_spaces = {k: cotangent_tensor(p) for k, p in perps.items()}
    torsion_reps = {k: tensor(TANGENT, liealg.isotypes_of(p, basis)) for k, p in perps.items()}

    def space(x, y):
        return _third(x, y)

    same_space = []
    for x, y in product(LABELS, repeat=2):
        if x != y:
            same_space.append({"pair": f"tau^{x}({y}) = tau^{y}({x})", "space": space(x, y),
                               "holds": space(x, y) == space(y, x)})

    splits = []
    for x in LABELS:
        y, z = [k for k in LABELS if k != x]
        a, b = comp[space(x, y)], comp[space(x, z)]
        total = a + b
        splits.append({
            "label": x,
            "algebra": LABELS[x],
            "dims": [torsion_spaces[x].dim, a.dim, b.dim],
            "rep_identity": torsion_reps[x] == comp_rep[space(x, y)] + comp_rep[space(x, z)],
            "direct": a.intersect(b).dim == 0 and total.dim == a.dim + b.dim,
            "exact_equal": total == torsion_spaces[x],
        })

    full = cotangent_tensor(liealg.orth_complement(liealg.build_algebra("g", basis).space))
    full_rep = tensor(TANGENT, liealg.isotypes_of(liealg.orth_complement(liealg.build_algebra("g", basis).space), basis))
    terms = [("P", "R"), ("R", "Q"), ("Q", "P")]
    parts = [comp[space(x, y)] for x, y in terms]
    three_sum = parts[0] + parts[1] + parts[2]
    pairwise = [parts[i].intersect(parts[j]).dim for i in range(3) for j in range(i + 1, 3)]
    three = {
        "terms": [f"tau^{x}({y})" for x, y in terms],
        "dims": [p.dim for p in parts],
        "total_dim": full.dim,
        "pairwise_intersections": pairwise,
        "rep_identity": full_rep == sum((comp_rep[space(x, y)] for x, y in terms), VirtualRep()),
        "direct": all(d == 0 for d in pairwise) and three_sum.dim == sum(p.dim for p in parts),
        "exact_equal": three_sum == full,
    }
    certificates = all(s["direct"] for s in splits) and three["direct"]
    return {
        "labels": dict(LABELS),
        "same_space": same_space,
        "splits": splits,
        "three_term": three,
        "certificates_ok": certificates,
        "rep_identities_ok": all(s["rep_identity"] for s in splits) and three["rep_identity"],
        "exact_ok": all(s["exact_equal"] for s in splits) and three["exact_equal"],
    }


# -- module splits ---------------------------------------------------------------

def _s20(r: VirtualRep) -> VirtualRep:
    return symmetric_power(r, 2) - irreducible(0)


def _l20(r: VirtualRep) -> VirtualRep:
    return exterior_power(r, 2) - irreducible(0)


def naveira_and_quaternionic_class_split(group: str) -> list[dict]:
    """Labelled components of the relative torsion, decomposed under g."""
    v, w = irreducible(2), irreducible(4)
    e, h = irreducible(3), irreducible(1)
    if group == "so3so5":
        parts = [
            ("L2V.W", tensor(exterior_power(v, 2), w)),
            ("S20V.W", tensor(_s20(v), w)),
            ("W", w),
            ("V.L2W", tensor(v, exterior_power(w, 2))),
            ("V.S20W", tensor(v, _s20(w))),
            ("V", v),
        ]
    elif group == "sp2sp1":
        k = tensor(_l20(e), e) - e
        s3h = symmetric_power(h, 3)
        parts = [
            ("E.S3H", tensor(e, s3h)),
            ("K.S3H", tensor(k, s3h)),
            ("K.H", tensor(k, h)),
            ("E.H", tensor(e, h)),
        ]
    else:
        raise TorsionError(f"no class split for group {group!r}; expected so3so5 or sp2sp1")
    return [{"name": n, "rep": r, "dim": real_dimension(r)[0]} for n, r in parts]


def class_split_total(group: str) -> VirtualRep:
    return sum((c["rep"] for c in naveira_and_quaternionic_class_split(group)), VirtualRep())


# -- invariant-torsion case solver ------------------------------------------------

A11, A12, A21, A22 = sympy.symbols("a11 a12 a21 a22")
B11, B12, B21, B22 = sympy.symbols("b11 b12 b21 b22")
M = sympy.Symbol("m", nonzero=True)
FREE = (A11, A12, A22, B21, B22)
FORM_NAMES = ("alpha", "beta", "gamma", "*gamma", "*alpha", "*beta")
_G, _SG, _SA, _SB = sympy.symbols("gamma *gamma *alpha *beta", commutative=True)


def _matrices(vals: dict):
    a = sympy.Matrix([[vals[A11], vals[A12]], [vals.get(A21, 0), vals[A22]]])
    b = sympy.Matrix([[vals.get(B11, 0), vals.get(B12, M * vals[A11])], [vals[B21], vals[B22]]])
    return a, b


def constraint_system(vals: dict | None = None) -> list:
    """Entries of BA with a21 = b11 = 0 and b12 = m a11."""
    vals = vals or {s: s for s in FREE}
    a, b = _matrices(vals)
    return [sympy.expand(x) for x in (b * a)]


def differentials(vals: dict) -> dict:
    """(d alpha, d beta) = (gamma, *gamma) A and (d gamma, d *gamma) = (*alpha, *beta) B."""
    a, b = _matrices(vals)
    return {
        "alpha": sympy.expand(a[0, 0] * _G + a[1, 0] * _SG),
        "beta": sympy.expand(a[0, 1] * _G + a[1, 1] * _SG),
        "gamma": sympy.expand(b[0, 0] * _SA + b[1, 0] * _SB),
        "*gamma": sympy.expand(b[0, 1] * _SA + b[1, 1] * _SB),
        "*alpha": sympy.Integer(0),
        "*beta": sympy.Integer(0),
    }


@dataclass(frozen=True)
class CaseFamily:
    tag: str
    zero: tuple
    nonzero: tuple
    relations: tuple  # sympy expressions that vanish on the family
    free: tuple
    differentials: dict
    rank_a: int
    ranks_b: tuple
    patterns: tuple = field(default=(), repr=False)

    def contains(self, values: dict) -> bool:
        """Membership for concrete values of a11, a12, a22, b21, b22 (m is the ratio b12/a11)."""
        if any(values[s] != 0 for s in self.zero) or any(values[s] == 0 for s in self.nonzero):
            return False
        args = [values[s] for s in FREE]
        return all(g(*args) == 0 for g in _relation_functions(self.relations))

    def to_json(self) -> dict:
        return {
            "tag": self.tag,
            "zero": [str(s) for s in self.zero],
            "nonzero": [str(s) for s in self.nonzero],
            "relations": [f"{r} = 0" for r in self.relations],
            "free": [str(s) for s in self.free],
            "differentials": {f"d({k})": _fmt_expr(v) for k, v in self.differentials.items()},
            "rank_A": self.rank_a,
            "ranks_B": list(self.ranks_b),
        }


def _fmt_expr(e) -> str:
    """Render a combination of forms as 'coeff*(form) + ...'."""
    parts = []
    for sym in (_G, _SG, _SA, _SB):
        c = sympy.factor(sympy.expand(e).coeff(sym))
        if c == 0:
            continue
        name = str(sym) if not str(sym).startswith("*") else f"({sym})"
        if c == 1:
            parts.append(name)
        elif c == -1:
            parts.append(f"-{name}")
        else:
            text = str(c)
            if c.is_Add:
                text = f"({text})"
            parts.append(f"{text}*{name}")
    return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def _admissible_patterns() -> list[dict]:
    """Zero/nonzero patterns of FREE compatible with the constraints.

    For each pattern the constraint system is solved over the nonzero
    symbols; solutions forcing a nonzero symbol to vanish are discarded.
    """
    found = []
    for mask in product((False, True), repeat=len(FREE)):
        nonzero = [s for s, on in zip(FREE, mask) if on]
        vals = {s: (s if on else sympy.Integer(0)) for s, on in zip(FREE, mask)}
        eqs = [e for e in constraint_system(vals) if e != 0]
        if not eqs:
            found.append({"nonzero": tuple(nonzero), "solution": {}})
            continue
        sol = _solve_pattern(eqs, nonzero)
        if sol is not None:
            found.append({"nonzero": tuple(nonzero), "solution": sol})
    return found


# Later coefficients are solved for first, matching the cascade's parametrisation.
_SOLVE_ORDER = (B22, B21, A12, A22, A11)


def _solve_pattern(eqs: list, nonzero: list) -> dict | None:
    """A solution of ``eqs`` keeping every symbol in ``nonzero`` nonzero, or None."""
    candidates = [[s] for s in _SOLVE_ORDER if s in nonzero] + [list(nonzero)]
    for unknowns in candidates:
        for sol in sympy.solve(eqs, unknowns, dict=True):
            if any(sympy.simplify(sol.get(s, s)) == 0 for s in nonzero):
                continue
            if any(sympy.simplify(e.subs(sol)) != 0 for e in eqs):
                continue
            return sol
    return None


def _cascade_tag(nonzero: tuple) -> str:
    if A11 in nonzero:
        return "I"
    if A22 in nonzero:
        return "II"
    if A12 in nonzero:
        return "III"
    return "IV"


def _rank(mat: sympy.Matrix) -> int:
    return mat.rank(simplify=True)


@lru_cache(maxsize=1)
def enumerate_invariant_cases() -> tuple:
    """The four generic families, merged from admissible zero patterns."""
    groups: dict[str, list] = {}
    for pat in _admissible_patterns():
        groups.setdefault(_cascade_tag(pat["nonzero"]), []).append(pat)
    fams = []
    for tag in ("I", "II", "III", "IV"):
        pats = groups[tag]
        generic = max(pats, key=lambda p: (len(p["nonzero"]) - len(p["solution"]), len(p["nonzero"])))
        sol = generic["solution"]
        vals = {s: (sol.get(s, s) if s in generic["nonzero"] else sympy.Integer(0)) for s in FREE}
        a, b = _matrices(vals)
        forced_zero = tuple(s for s in (A11, A22, A12) if vals[s] == 0)
        lead = {"I": (A11,), "II": (A22,), "III": (A12,), "IV": ()}[tag]
        zero = forced_zero + tuple(s for s in FREE if s not in forced_zero and vals[s] == 0)
        relations = tuple(sympy.expand(sympy.fraction(sympy.together(s - v))[0]) for s, v in sol.items())
        free = tuple(s for s in FREE if s not in zero and s not in sol)
        ranks_b = sorted({_rank(_matrices({s: (p["solution"].get(s, s) if s in p["nonzero"] else 0)
                                           for s in FREE})[1]) for p in pats})
        fams.append(CaseFamily(
            tag=tag,
            zero=zero,
            nonzero=lead,
            relations=relations,
            free=free,
            differentials=differentials(vals),
            rank_a=_rank(a),
            ranks_b=tuple(ranks_b),
            patterns=tuple(p["nonzero"] for p in pats),
        ))
    return tuple(fams)


def case_classify(a, b) -> str:
    """Family tag of concrete rational matrices (A, B), or 'inadmissible'."""
    a = [[Fraction(x) for x in row] for row in a]
    b = [[Fraction(x) for x in row] for row in b]
    ba = la.matmul(b, a)
    if not la.is_zero(ba):
        return "inadmissible"
    if a[1][0] != 0 or b[0][0] != 0:
        return "inadmissible"
    if (b[0][1] == 0) != (a[0][0] == 0):
        return "inadmissible"
    values = {A11: a[0][0], A12: a[0][1], A22: a[1][1], B21: b[1][0], B22: b[1][1]}
    hits = [f.tag for f in enumerate_invariant_cases() if f.contains(values)]
    if len(hits) != 1:
        return "inadmissible"
    return hits[0]


def random_admissible_pair(rng: random.Random) -> tuple:
    """Rejection-sample a rational pair (A, B) satisfying every constraint."""
    def entry():
        if rng.random() < 0.45:
            return Fraction(0)
        return Fraction(rng.choice([i for i in range(-9, 10) if i]), rng.randint(1, 6))

    while True:
        a11, a12, a22, b21, b22 = (entry() for _ in range(5))
        m = Fraction(rng.choice([i for i in range(-5, 6) if i]), rng.randint(1, 4))
        a = [[a11, a12], [Fraction(0), a22]]
        b = [[Fraction(0), m * a11], [b21, b22]]
        if la.is_zero(la.matmul(b, a)):
            return a, b


def sample_cases(n: int = 10_000, seed: int = 0) -> dict:
    """Classify ``n`` random admissible pairs; every sample must land in exactly one family."""
    rng = random.Random(seed)
    fams = enumerate_invariant_cases()
    counts = {f.tag: 0 for f in fams}
    multi = 0
    ba_zero = True
    for _ in range(n):
        a, b = random_admissible_pair(rng)
        ba_zero &= la.is_zero(la.matmul(b, a))
        values = {A11: a[0][0], A12: a[0][1], A22: a[1][1], B21: b[1][0], B22: b[1][1]}
        hits = [f.tag for f in fams if f.contains(values)]
        if len(hits) != 1:
            multi += 1
            continue
        counts[hits[0]] += 1
    return {"samples": n, "seed": seed, "counts": counts, "unclassified_or_ambiguous": multi,
            "all_ba_zero": ba_zero, "every_family_hit": all(counts.values())}


@lru_cache(maxsize=None)
def _relation_functions(relations: tuple) -> tuple:
    """Polynomial relations as plain functions; they evaluate exactly on Fractions."""
    return tuple(sympy.lambdify(FREE, r, modules=[{}]) for r in relations)
