"""Exact matrix models of subalgebras of so(8) containing the diagonal so(3).

Model of R^8
------------
R^8 is a rational form of su(3) split along its Cartan decomposition,
``X = A + i*sqrt(3)*S`` with ``A`` real antisymmetric (the 3-dimensional
summand V) and ``S`` real symmetric traceless (the 5-dimensional summand W).
Pairs ``(A, S)`` carry the bracket

    [(A, S), (B, T)] = ([A, B] - 3[S, T], [A, T] + [S, B])

and the negative trace form ``-1/2 tr(XY) = -1/2 tr(AB) + 3/2 tr(ST)``.
The factor sqrt(3) makes that form admit a *rational* orthonormal basis
(the plain trace form on su(3) does not), so every algebra below is a
space of rational antisymmetric 8x8 matrices.

so(8) is identified with antisymmetric 8x8 matrices and coordinatised by
the 28 upper-triangular entries; the negative trace form -tr(XY) is twice
the dot product in these coordinates.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

import sympy

from so3eight import linalg as la
from so3eight.linalg import Subspace
from so3eight.repring import VirtualRep

BASIS_VERSION = "1"
DIM = 8
PAIRS = tuple(combinations(range(DIM), 2))
SO8_DIM = len(PAIRS)
_PAIR_INDEX = {p: i for i, p in enumerate(PAIRS)}
KINDS = ("g", "so3so5", "su3", "sp2sp1", "sp2sp1_asd", "so8")


class AlgebraError(RuntimeError):
    pass


def _e(i, j, n=3):
    return tuple(tuple(Fraction(int((r, c) == (i, j))) for c in range(n)) for r in range(n))


def _comb(coeffs, mats):
    out = la.zeros(len(mats[0]))
    for c, m in zip(coeffs, mats):
        if c:
            out = la.madd(out, la.mscale(c, m))
    return out


@dataclass(frozen=True)
class ReferenceBasis:
    """Ordered orthonormal basis of R^8 = V + W as pairs (A, S) of 3x3 matrices.

    Indices 0-2 span V, 3-7 span W.
    """

    vectors: tuple
    version: str = BASIS_VERSION
    label: str = "reference"

    def __len__(self):
        return len(self.vectors)

    def gram(self) -> la.Matrix:
        return tuple(tuple(su3_inner(a, b) for b in self.vectors) for a in self.vectors)

    def coordinates(self, x) -> la.Vector:
        # valid because the basis is orthonormal
        return tuple(su3_inner(b, x) for b in self.vectors)

    def permuted(self, perm: Sequence[int], label="permuted") -> "ReferenceBasis":
        return ReferenceBasis(tuple(self.vectors[i] for i in perm), self.version, label)

    def to_json(self) -> dict:
        return {
            "version": self.version,
            "label": self.label,
            "vectors": [
                {"A": [[la.fmt(x) for x in r] for r in a], "S": [[la.fmt(x) for x in r] for r in s]}
                for a, s in self.vectors
            ],
        }


def su3_bracket(x, y):
    (a, s), (b, t) = x, y
    return (
        la.msub(la.bracket(a, b), la.mscale(3, la.bracket(s, t))),
        la.madd(la.bracket(a, t), la.bracket(s, b)),
    )


def su3_inner(x, y) -> Fraction:
    (a, s), (b, t) = x, y
    return -la.trace(la.matmul(a, b)) / 2 + Fraction(3, 2) * la.trace(la.matmul(s, t))


def build_reference_basis() -> ReferenceBasis:
    """The frozen orthonormal basis of R^8 used by every module."""
    zero = la.zeros(3)
    rot = [
        la.msub(_e(2, 1), _e(1, 2)),
        la.msub(_e(0, 2), _e(2, 0)),
        la.msub(_e(1, 0), _e(0, 1)),
    ]
    sym = [
        la.madd(_e(0, 1), _e(1, 0)),
        la.madd(_e(0, 2), _e(2, 0)),
        la.madd(_e(1, 2), _e(2, 1)),
        la.msub(_e(0, 0), _e(1, 1)),
    ]
    # each sym[j] has norm^2 3; rotate by left multiplication with the
    # quaternion 1 + i + j (norm 3) to get an orthonormal rational frame
    quat = ((1, -1, -1, 0), (1, 1, 0, 1), (1, 0, 1, -1), (0, -1, 1, 1))
    w = [la.mscale(Fraction(1, 3), _comb(row, sym)) for row in quat]
    w.append(la.mscale(Fraction(1, 3), la.madd(la.madd(_e(0, 0), _e(1, 1)), la.mscale(-2, _e(2, 2)))))
    vectors = tuple((r, zero) for r in rot) + tuple((zero, s) for s in w)
    basis = ReferenceBasis(vectors)
    if basis.gram() != la.identity(DIM):
        raise AlgebraError("reference basis is not orthonormal")
    return basis


REFERENCE = build_reference_basis()


# -- so(8) coordinates -------------------------------------------------------

def so8_vector(m) -> la.Vector:
    for i in range(DIM):
        for j in range(i, DIM):
            if m[i][j] != -m[j][i]:
                raise AlgebraError("matrix is not antisymmetric")
    return tuple(Fraction(m[i][j]) for i, j in PAIRS)


def so8_matrix(v) -> la.Matrix:
    out = [[Fraction(0)] * DIM for _ in range(DIM)]
    for (i, j), x in zip(PAIRS, v):
        out[i][j] = Fraction(x)
        out[j][i] = -Fraction(x)
    return tuple(tuple(r) for r in out)


def so8_unit(k: int) -> la.Matrix:
    v = [0] * SO8_DIM
    v[k] = 1
    return so8_matrix(v)


def trace_form(x, y) -> Fraction:
    """Negative trace form -tr(XY) on 8x8 matrices."""
    return -la.trace(la.matmul(x, y))


def subspace_to_json(sub: Subspace) -> dict:
    """so(8) subspaces serialise their basis as 8x8 matrices of "p/q" strings."""
    if sub.ambient != SO8_DIM:
        return sub.to_json()
    return {
        "ambient": SO8_DIM,
        "basis": [[[la.fmt(x) for x in row] for row in so8_matrix(v)] for v in sub.vectors],
    }


def subspace_from_json(data) -> Subspace:
    if isinstance(data, str):
        data = json.loads(data)
    vecs = []
    for b in data["basis"]:
        if b and isinstance(b[0], list):
            vecs.append(so8_vector([[Fraction(x) for x in r] for r in b]))
        else:
            vecs.append([Fraction(x) for x in b])
    return Subspace(data["ambient"], vecs)


# -- representations ---------------------------------------------------------

def ad_su3(x, basis: ReferenceBasis = REFERENCE) -> la.Matrix:
    """Matrix of ad(x) on R^8 in ``basis`` (columns are images)."""
    cols = [basis.coordinates(su3_bracket(x, b)) for b in basis.vectors]
    return tuple(tuple(c[i] for c in cols) for i in range(DIM))


@lru_cache(maxsize=None)
def g_generators(basis: ReferenceBasis = REFERENCE) -> tuple:
    """Generators e_1, e_2, e_3 of g acting on R^8 with [e_1, e_2] = 2 e_3.

    Scaled so the Casimir sum(e_i^2) acts on S^n by -n(n+2).
    """
    return tuple(la.mscale(2, ad_su3(basis.vectors[i], basis)) for i in range(3))


def so8_action(x) -> la.Matrix:
    """Matrix of Y -> [x, Y] on so(8) coordinates."""
    cols = [so8_vector(la.bracket(x, so8_unit(k))) for k in range(SO8_DIM)]
    return tuple(tuple(c[i] for c in cols) for i in range(SO8_DIM))


def tensor_action(a, b) -> la.Matrix:
    """a (x) 1 + 1 (x) b."""
    n, m = len(a), len(b)
    out = [[Fraction(0)] * (n * m) for _ in range(n * m)]
    for i in range(n):
        for j in range(n):
            x = a[i][j]
            if x:
                for k in range(m):
                    out[i * m + k][j * m + k] += x
    for i in range(n):
        for k in range(m):
            for l in range(m):
                y = b[k][l]
                if y:
                    out[i * m + k][i * m + l] += y
    return tuple(tuple(r) for r in out)


def casimir(generators) -> la.Matrix:
    c = la.zeros(len(generators[0]))
    for e in generators:
        c = la.madd(c, la.matmul(e, e))
    return c


def casimir_isotypes_full(generators) -> VirtualRep:
    """Isotypic decomposition from kernels of C + n(n+2) on the whole space.

    ``generators`` must represent so(3) normalised so that S^2 has Casimir -8.
    """
    if not generators:
        raise AlgebraError("no generators")
    n_total = len(generators[0])
    if n_total == 0:
        return VirtualRep()
    return _isotypes_from_casimir(casimir(generators), n_total, lambda n: n + 1)


def _isotypes_from_casimir(c, size: int, per_copy) -> VirtualRep:
    """Multiplicities from the kernels of c + n(n+2), n = 0, 1, ...

    ``per_copy(n)`` is the number of dimensions one copy of S^n contributes
    to the space ``c`` acts on; zero means such eigenvectors are impossible.
    """
    out = {}
    seen = 0
    n = 0
    while seen < size:
        if n > 2 * size + 2:
            raise AlgebraError(f"Casimir spectrum leaves {size - seen} dimensions unexplained")
        lam = n * (n + 2)
        shifted = [list(r) for r in c]
        for i in range(size):
            shifted[i][i] += lam
        k = size - la.rank(shifted, size)
        if k:
            step = per_copy(n)
            if not step or k % step:
                raise AlgebraError(f"eigenspace for n={n} has dimension {k}, not a multiple of {step}")
            out[n] = k // step
            seen += k
        n += 1
    return VirtualRep(out)


def casimir_isotypes(generators) -> VirtualRep:
    """Isotypic decomposition through the zero-weight space.

    Every even S^n has a one-dimensional zero-weight space, so when the
    kernel of the third generator explains all dimensions the Casimir only
    has to be diagonalised there.  Otherwise the full-space method is used.
    """
    if not generators:
        raise AlgebraError("no generators")
    n_total = len(generators[0])
    if n_total == 0:
        return VirtualRep()
    zero = Subspace(n_total, la.nullspace(generators[2], n_total))
    if not zero.dim:
        return casimir_isotypes_full(generators)
    cols = []
    for v in zero.rows:
        w = la.zeros(1, n_total)[0]
        for e in generators:
            w = tuple(a + b for a, b in zip(w, la.matvec(e, la.matvec(e, v))))
        cols.append(zero.coordinates(w))
    d = zero.dim
    restricted = tuple(tuple(c[i] for c in cols) for i in range(d))
    try:
        found = _isotypes_from_casimir(restricted, d, lambda n: 1 if n % 2 == 0 else 0)
    except AlgebraError:
        return casimir_isotypes_full(generators)
    if found.dim != n_total:
        return casimir_isotypes_full(generators)
    return found


def g_action_on(sub: Subspace, basis: ReferenceBasis = REFERENCE) -> tuple:
    """Generators of g acting on a g-invariant subspace of so(8)."""
    return tuple(la.action_on(sub, so8_action(e)) for e in g_generators(basis))


def isotypes_of(sub: Subspace, basis: ReferenceBasis = REFERENCE) -> VirtualRep:
    if not sub.dim:
        return VirtualRep()
    return casimir_isotypes(g_action_on(sub, basis))


def cotangent_isotypes(sub: Subspace, basis: ReferenceBasis = REFERENCE) -> VirtualRep:
    """Isotypes of R^8 (x) sub computed from the tensor-product action."""
    if not sub.dim:
        return VirtualRep()
    gens = [tensor_action(e, a) for e, a in zip(g_generators(basis), g_action_on(sub, basis))]
    return casimir_isotypes(gens)


# -- algebra models ----------------------------------------------------------

@dataclass(frozen=True)
class AlgebraModel:
    name: str
    space: Subspace
    bracket_closed: bool
    contains_g: bool
    matrices: tuple = field(repr=False, default=())

    @property
    def dim(self) -> int:
        return self.space.dim

    def report(self) -> dict:
        return {
            "name": self.name,
            "dim": self.dim,
            "contains_g": self.contains_g,
            "bracket_closed": self.bracket_closed,
        }


def is_bracket_closed(space: Subspace) -> bool:
    mats = [so8_matrix(v) for v in space.rows]
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            if not space.contains(so8_vector(la.bracket(mats[i], mats[j]))):
                return False
    return True


def _g_space(basis) -> Subspace:
    return Subspace(SO8_DIM, [so8_vector(e) for e in g_generators(basis)])


_EXPECTED_DIMS = {"g": 3, "so3so5": 13, "su3": 8, "sp2sp1": 13, "sp2sp1_asd": 13, "so8": 28}


@lru_cache(maxsize=None)
def build_algebra(kind: str, basis: ReferenceBasis = REFERENCE) -> AlgebraModel:
    """Build one of the subalgebras of so(8) by name.

    ``sp2sp1`` is the stabiliser of the self-dual invariant 4-form
    gamma + *gamma; ``sp2sp1_asd`` that of the anti-self-dual gamma - *gamma.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown algebra {kind!r}; expected one of {KINDS}")
    if kind == "g":
        mats = g_generators(basis)
    elif kind == "so3so5":
        mats = tuple(
            so8_unit(k) for k, (i, j) in enumerate(PAIRS) if (i < 3) == (j < 3)
        )
    elif kind == "su3":
        mats = tuple(ad_su3(b, basis) for b in basis.vectors)
    elif kind == "so8":
        mats = tuple(so8_unit(k) for k in range(SO8_DIM))
    else:
        from so3eight import exforms

        forms = exforms.locate_invariant_forms(basis)
        slope = 1 if kind == "sp2sp1" else -1
        omega = forms["gamma"] + forms["*gamma"].scale(slope)
        space = exforms.stabilizer(omega)
        mats = tuple(so8_matrix(v) for v in space.vectors)
    space = Subspace(SO8_DIM, [so8_vector(m) for m in mats])
    if space.dim != _EXPECTED_DIMS[kind]:
        raise AlgebraError(f"{kind}: built dimension {space.dim}, expected {_EXPECTED_DIMS[kind]}")
    return AlgebraModel(
        name=kind,
        space=space,
        bracket_closed=is_bracket_closed(space),
        contains_g=_g_space(basis).issubspace(space),
        matrices=mats,
    )


def intersect(a: Subspace, b: Subspace) -> Subspace:
    return a.intersect(b)


def orth_complement(a: Subspace) -> Subspace:
    """Complement in so(8) for -tr(XY) (a multiple of the coordinate dot product)."""
    return a.complement()


def _space(x) -> Subspace:
    return x.space if isinstance(x, AlgebraModel) else x


def quotient_space(big, basis: ReferenceBasis = REFERENCE) -> Subspace:
    """Trace-form complement of g inside ``big`` (a model of big/g)."""
    return _space(big).relative_complement(_g_space(basis))


def quotient_isotypes(big, basis: ReferenceBasis = REFERENCE) -> VirtualRep:
    big = _space(big)
    if not _g_space(basis).issubspace(big):
        raise AlgebraError("g is not contained in the algebra")
    return isotypes_of(quotient_space(big, basis), basis)


def trace_form_definite(space: Subspace) -> bool:
    """True when -tr(XY) restricted to ``space`` is positive definite (LDL^T)."""
    mats = [so8_matrix(v) for v in space.rows]
    g = [[trace_form(a, b) for b in mats] for a in mats]
    n = len(g)
    for k in range(n):
        piv = g[k][k]
        if piv <= 0:
            return False
        for i in range(k + 1, n):
            f = g[i][k] / piv
            if f:
                for j in range(k, n):
                    g[i][j] -= f * g[k][j]
    return True


# -- ideals --------------------------------------------------------------------

def _structure_maps(space: Subspace) -> list:
    """ad(x_i) as dim x dim matrices in the RREF basis of ``space``."""
    mats = [so8_matrix(v) for v in space.rows]
    out = []
    for x in mats:
        cols = [space.coordinates(so8_vector(la.bracket(x, y))) for y in mats]
        out.append(tuple(tuple(c[i] for c in cols) for i in range(len(mats))))
    return out


def _commutant(maps, d) -> list:
    """Basis of {T : T ad_x = ad_x T for all x}, T flattened row-major."""
    rows = []
    for a in maps:
        for i in range(d):
            for j in range(d):
                # (T a - a T)_{ij} = sum_k T_ik a_kj - a_ik T_kj
                row = [Fraction(0)] * (d * d)
                for k in range(d):
                    if a[k][j]:
                        row[i * d + k] += a[k][j]
                    if a[i][k]:
                        row[k * d + j] -= a[i][k]
                if any(row):
                    rows.append(row)
    return la.nullspace(rows, d * d)


def _min_poly_roots(t, d) -> list[Fraction]:
    powers = [la.identity(d)]
    while True:
        powers.append(la.matmul(powers[-1], t))
        flat = [[x for r in p for x in r] for p in powers]
        ker = la.nullspace(la.transpose(flat), len(flat))
        if ker:
            coeffs = ker[0]
            lam = sympy.Symbol("lam")
            poly = sum(sympy.Rational(c.numerator, c.denominator) * lam**i for i, c in enumerate(coeffs))
            return [Fraction(int(r.p), int(r.q)) for r in sympy.roots(sympy.Poly(poly, lam), filter="Q")]


def ideals(algebra) -> list[Subspace]:
    """Split a semisimple subalgebra of so(8) into ideals over Q.

    Uses eigenspaces of a generic element of the commutant of the adjoint
    representation; each piece is split again until its commutant is
    one-dimensional.
    """
    space = _space(algebra)
    d = space.dim
    if d == 0:
        return []
    maps = _structure_maps(space)
    comm = _commutant(maps, d)
    if len(comm) <= 1:
        return [space]
    weights = [1, 2, 3, 5, 7, 11, 13, 17, 19, 23]
    t = [[Fraction(0)] * d for _ in range(d)]
    for w, c in zip(weights, comm):
        for k, x in enumerate(c):
            if x:
                t[k // d][k % d] += w * x
    t = tuple(tuple(r) for r in t)
    roots = _min_poly_roots(t, d)
    pieces = []
    for lam in roots:
        shifted = [list(r) for r in t]
        for i in range(d):
            shifted[i][i] -= lam
        ker = la.nullspace(shifted, d)
        vecs = []
        for k in ker:
            v = [Fraction(0)] * SO8_DIM
            for c, r in zip(k, space.rows):
                if c:
                    for j, x in enumerate(r):
                        if x:
                            v[j] += c * x
            vecs.append(v)
        pieces.append(Subspace(SO8_DIM, vecs))
    if sum(p.dim for p in pieces) != d:
        raise AlgebraError("commutant element is not split over Q; ideals not rational")
    out = []
    for p in pieces:
        out.extend(ideals(p))
    return sorted(out, key=lambda s: -s.dim)


def is_ideal(sub: Subspace, algebra) -> bool:
    space = _space(algebra)
    for x in space.rows:
        mx = so8_matrix(x)
        for y in sub.rows:
            if not sub.contains(so8_vector(la.bracket(mx, so8_matrix(y)))):
                return False
    return True


# -- theorem checks -----------------------------------------------------------------

_TRIAD = ("so3so5", "su3", "sp2sp1")


def verify_intersection_theorem(basis: ReferenceBasis = REFERENCE) -> dict:
    """Pairwise intersections of the three algebras against g."""
    g = _g_space(basis)
    algs = {k: build_algebra(k, basis).space for k in _TRIAD}
    pairs = []
    for a, b in (("so3so5", "su3"), ("su3", "sp2sp1"), ("sp2sp1", "so3so5")):
        inter = algs[a].intersect(algs[b])
        pairs.append({"pair": [a, b], "dim": inter.dim, "equals_g": inter == g})
    triple = algs["so3so5"].intersect(algs["su3"]).intersect(algs["sp2sp1"])
    ok = all(p["equals_g"] for p in pairs) and triple == g
    return {"pairs": pairs, "triple_dim": triple.dim, "triple_equals_g": triple == g, "ok": ok}


def verify_complement_theorem(basis: ReferenceBasis = REFERENCE) -> dict:
    """Complement identities between the three algebras and their quotients by g.

    For each cyclic assignment (i, j, k) the report states whether
    g_i^perp equals (g_j/g) + (g_k/g) as subspaces of so(8), whether that
    sum is direct, and whether orthogonal projection onto g_i^perp maps it
    isomorphically (the module-level statement).
    """
    g = _g_space(basis)
    algs = {k: build_algebra(k, basis).space for k in _TRIAD}
    quots = {k: quotient_space(v, basis) for k, v in algs.items()}
    cyclic = []
    for i, j, k in (("so3so5", "su3", "sp2sp1"), ("su3", "sp2sp1", "so3so5"), ("sp2sp1", "so3so5", "su3")):
        perp = orth_complement(algs[i])
        total = quots[j] + quots[k]
        direct = la.independent([quots[j], quots[k]])
        # projection onto perp is injective on total iff total meets g_i trivially
        projected_iso = direct and total.intersect(algs[i]).dim == 0 and total.dim == perp.dim
        cyclic.append({
            "perp": i,
            "summands": [j, k],
            "perp_dim": perp.dim,
            "summand_dims": [quots[j].dim, quots[k].dim],
            "direct": direct,
            "exact_equal": total == perp,
            "isomorphic_by_projection": projected_iso,
        })
    gperp = orth_complement(g)
    gsum = quots["so3so5"] + quots["su3"] + quots["sp2sp1"]
    gdirect = la.independent(list(quots.values()))
    return {
        "cyclic": cyclic,
        "g_perp_dim": gperp.dim,
        "quotient_dims": {k: v.dim for k, v in quots.items()},
        "g_perp_direct_sum": gdirect,
        "g_perp_exact_equal": gsum == gperp,
        "ok": all(c["exact_equal"] and c["direct"] for c in cyclic) and gdirect and gsum == gperp,
    }
