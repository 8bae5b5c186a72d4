"""Exterior algebra of R^8 with the induced so(8)-action.

Forms are expanded in the lexicographic basis e_I = e_i1 ^ ... ^ e_ik of
the reference basis (0-based internally, 1-based in printed/serialised
multi-indices).  Orientation is e1 ^ ... ^ e8.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, gcd, lcm

from so3eight import linalg as la
from so3eight import liealg
from so3eight.linalg import Subspace

N = 8


class FormError(ValueError):
    pass


@lru_cache(maxsize=None)
def multi_indices(k: int) -> tuple:
    if not 0 <= k <= N:
        raise FormError(f"degree {k} out of range 0..{N}")
    return tuple(combinations(range(N), k))


@lru_cache(maxsize=None)
def _position(k: int) -> dict:
    return {idx: i for i, idx in enumerate(multi_indices(k))}


def sort_sign(idx) -> tuple[int, tuple]:
    """Sign of the permutation sorting ``idx`` (0 if an index repeats)."""
    idx = list(idx)
    if len(set(idx)) < len(idx):
        return 0, ()
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return sign, tuple(idx)


@dataclass(frozen=True)
class KForm:
    degree: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != comb(N, self.degree):
            raise FormError(f"degree {self.degree} needs {comb(N, self.degree)} coefficients")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def zero(cls, k: int) -> "KForm":
        return cls(k, (0,) * comb(N, k))

    @classmethod
    def basis(cls, *idx: int) -> "KForm":
        """e_{i1} ^ ... ^ e_{ik} with 1-based indices, sign included."""
        sign, srt = sort_sign([i - 1 for i in idx])
        k = len(idx)
        c = [0] * comb(N, k)
        if sign:
            c[_position(k)[srt]] = sign
        return cls(k, tuple(c))

    @classmethod
    def volume(cls) -> "KForm":
        return cls.basis(*range(1, N + 1))

    def __add__(self, other: "KForm") -> "KForm":
        self._same(other)
        return KForm(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "KForm") -> "KForm":
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "KForm":
        c = Fraction(c)
        return KForm(self.degree, tuple(c * x for x in self.coeffs))

    def _same(self, other):
        if self.degree != other.degree:
            raise FormError("degree mismatch")

    def inner(self, other: "KForm") -> Fraction:
        self._same(other)
        return la.dot(self.coeffs, other.coeffs)

    def norm2(self) -> Fraction:
        return self.inner(self)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def terms(self):
        for idx, c in zip(multi_indices(self.degree), self.coeffs):
            if c:
                yield idx, c

    def wedge(self, other: "KForm") -> "KForm":
        k = self.degree + other.degree
        if k > N:
            raise FormError(f"wedge product of degree {k} exceeds {N}")
        pos = _position(k)
        out = [Fraction(0)] * comb(N, k)
        for i1, c1 in self.terms():
            for i2, c2 in other.terms():
                sign, srt = sort_sign(i1 + i2)
                if sign:
                    out[pos[srt]] += sign * c1 * c2
        return KForm(k, tuple(out))

    def normalized(self) -> "KForm":
        """Primitive integer multiple with first nonzero coefficient positive."""
        nz = [c for c in self.coeffs if c]
        if not nz:
            return self
        d = 1
        for c in nz:
            d = lcm(d, c.denominator)
        ints = [int(c * d) for c in self.coeffs]
        g = 0
        for x in ints:
            g = gcd(g, x)
        sign = 1 if next(x for x in ints if x) > 0 else -1
        return KForm(self.degree, tuple(sign * x // g for x in ints))

    def pretty(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for idx, c in self.terms():
            name = "^".join(f"e{i + 1}" for i in idx) if idx else "1"
            mag = abs(c)
            coef = "" if mag == 1 else f"{mag}*"
            parts.append(("-" if c < 0 else "+") + " " + coef + name)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[1:]

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "coeffs": {"".join(str(i + 1) for i in idx): la.fmt(c) for idx, c in self.terms()},
        }

    @classmethod
    def from_json(cls, data) -> "KForm":
        if isinstance(data, str):
            data = json.loads(data)
        k = data["degree"]
        pos = _position(k)
        c = [Fraction(0)] * comb(N, k)
        for key, val in data["coeffs"].items():
            idx = tuple(int(ch) - 1 for ch in key) if key else ()
            if len(idx) != k:
                raise FormError(f"multi-index {key!r} has wrong length")
            sign, srt = sort_sign(idx)
            if not sign:
                raise FormError(f"repeated index in {key!r}")
            c[pos[srt]] += sign * Fraction(val)
        return cls(k, tuple(c))


# -- the so(8) action --------------------------------------------------------

@lru_cache(maxsize=None)
def _unit_actions(k: int) -> tuple:
    """Sparse action {(row, col): value} of each so(8) unit E_ab - E_ba on Lambda^k."""
    out = []
    for a, b in liealg.PAIRS:
        out.append(_sparse_action({(a, b): 1, (b, a): -1}, k))
    return tuple(out)


def _sparse_action(entries: dict, k: int) -> dict:
    # X e_j = -sum_l X[j][l] e_l on covectors (matrix -X^T)
    pos = _position(k)
    out: dict = {}
    for col, idx in enumerate(multi_indices(k)):
        for m, j in enumerate(idx):
            for (r, l), x in entries.items():
                if r != j or not x:
                    continue
                new = list(idx)
                new[m] = l
                sign, srt = sort_sign(new)
                if sign:
                    key = (pos[srt], col)
                    out[key] = out.get(key, 0) - sign * x
    return {key: v for key, v in out.items() if v}


def lie_action(x, k: int) -> la.Matrix:
    """Matrix of the derivation induced by ``x`` in so(8) on Lambda^k."""
    n = comb(N, k) if 0 <= k <= N else _bad_degree(k)
    out = [[Fraction(0)] * n for _ in range(n)]
    entries = {(i, j): Fraction(x[i][j]) for i in range(N) for j in range(N) if x[i][j]}
    for (r, c), v in _sparse_action(entries, k).items():
        out[r][c] += v
    return tuple(tuple(row) for row in out)


def _bad_degree(k):
    raise FormError(f"degree {k} out of range 0..{N}")


def act(x, f: KForm) -> KForm:
    return KForm(f.degree, la.matvec(lie_action(x, f.degree), f.coeffs))


def _stabilizer_columns(f: KForm) -> list:
    """Column t is (E_t . f) for the so(8) unit E_t."""
    n = comb(N, f.degree)
    cols = []
    for acts in _unit_actions(f.degree):
        col = [Fraction(0)] * n
        for (r, c), v in acts.items():
            if f.coeffs[c]:
                col[r] += v * f.coeffs[c]
        cols.append(col)
    return cols


def stabilizer(f: KForm) -> Subspace:
    """{X in so(8) : X . f = 0} in so(8) coordinates."""
    rows = la.transpose(_stabilizer_columns(f))
    return Subspace(liealg.SO8_DIM, la.nullspace(rows, liealg.SO8_DIM))


@lru_cache(maxsize=None)
def invariant_subspace(k: int, basis: liealg.ReferenceBasis = liealg.REFERENCE) -> Subspace:
    """(Lambda^k)^g as a subspace of R^C(8,k)."""
    n = comb(N, k) if 0 <= k <= N else _bad_degree(k)
    rows = []
    for e in liealg.g_generators(basis):
        rows.extend(list(r) for r in lie_action(e, k))
    return Subspace(n, la.nullspace(rows, n))


def hodge_star(f: KForm) -> KForm:
    """omega ^ *eta = <omega, eta> vol for the orientation e1 ^ ... ^ e8."""
    k = f.degree
    pos = _position(N - k)
    out = [Fraction(0)] * comb(N, N - k)
    for idx, c in f.terms():
        rest = tuple(i for i in range(N) if i not in idx)
        sign, _ = sort_sign(idx + rest)
        out[pos[rest]] += sign * c
    return KForm(N - k, tuple(out))


def n_v(idx) -> int:
    """Number of V-directions (reference indices 0-2) in a multi-index."""
    return sum(1 for i in idx if i < 3)


def _solve_in(space: Subspace, k: int, vanish) -> list[KForm]:
    """Elements of ``space`` whose coefficients vanish on indices where ``vanish(idx)``."""
    idxs = [i for i, idx in enumerate(multi_indices(k)) if vanish(idx)]
    vecs = space.rows
    rows = [[v[i] for v in vecs] for i in idxs]
    sols = la.nullspace(rows, len(vecs)) if rows else [
        tuple(Fraction(int(i == j)) for j in range(len(vecs))) for i in range(len(vecs))
    ]
    out = []
    for s in sols:
        c = [Fraction(0)] * space.ambient
        for a, v in zip(s, vecs):
            if a:
                for j, x in enumerate(v):
                    if x:
                        c[j] += a * x
        out.append(KForm(k, tuple(c)))
    return out


def _one(forms: list[KForm], name: str) -> KForm:
    if len(forms) != 1:
        raise FormError(f"support criterion for {name} leaves a {len(forms)}-dimensional space")
    return forms[0].normalized()


@lru_cache(maxsize=None)
def locate_invariant_forms(basis: liealg.ReferenceBasis = liealg.REFERENCE) -> dict:
    """The six invariant forms alpha, beta, gamma, *gamma, *alpha, *beta.

    alpha is supported on Lambda^3 V, beta has no Lambda^3 V component,
    gamma has no V ^ Lambda^3 W component.  Each is the primitive integer
    vector with positive first coefficient; exact unit normalisation is
    impossible over Q (norms are reported by :func:`form_norms`).
    """
    inv3 = invariant_subspace(3, basis)
    inv4 = invariant_subspace(4, basis)
    if inv3.dim != 2 or inv4.dim != 2:
        raise FormError(f"invariant spaces have dims {inv3.dim}, {inv4.dim}; expected 2, 2")
    alpha = _one(_solve_in(inv3, 3, lambda idx: n_v(idx) != 3), "alpha")
    beta = _one(_solve_in(inv3, 3, lambda idx: n_v(idx) == 3), "beta")
    gamma = _one(_solve_in(inv4, 4, lambda idx: n_v(idx) == 1), "gamma")
    return {
        "alpha": alpha,
        "beta": beta,
        "gamma": gamma,
        "*gamma": hodge_star(gamma),
        "*alpha": hodge_star(alpha),
        "*beta": hodge_star(beta),
    }


def form_norms(forms: dict) -> dict:
    return {name: f.norm2() for name, f in forms.items()}


def support_profile(f: KForm) -> dict:
    """Coefficient count per V-degree, e.g. {2: 24} for a Lambda^2 V ^ Lambda^2 W form."""
    return dict(sorted(Counter(n_v(idx) for idx, _ in f.terms()).items()))


# -- pencils ---------------------------------------------------------------------

@dataclass(frozen=True)
class FormPencil:
    first: KForm
    second: KForm
    resolution: int = 4

    def __post_init__(self):
        if self.first.degree != self.second.degree:
            raise FormError("pencil forms must have equal degree")
        if la.rank([self.first.coeffs, self.second.coeffs]) != 2:
            raise FormError("pencil forms are linearly dependent")


def slope_grid(resolution: int) -> list:
    """Rational slopes p/q with |p| <= n, 1 <= q <= n, plus +-1 and infinity (None)."""
    slopes = {Fraction(p, q) for q in range(1, resolution + 1) for p in range(-resolution, resolution + 1)}
    slopes |= {Fraction(1), Fraction(-1)}
    return sorted(slopes) + [None]


def pencil_scan(pencil: FormPencil) -> dict:
    """Stabiliser dimension along rays first + s*second (s = None means ``second``).

    Returns the scanned rays, the generic dimension (most frequent value)
    and the jump rays whose stabiliser is larger.
    """
    a = la.transpose(_stabilizer_columns(pencil.first))
    b = la.transpose(_stabilizer_columns(pencil.second))
    rays = []
    for s in slope_grid(pencil.resolution):
        if s is None:
            m = b
        else:
            m = [[x + s * y for x, y in zip(r1, r2)] for r1, r2 in zip(a, b)]
        dim = liealg.SO8_DIM - la.rank(m, liealg.SO8_DIM)
        rays.append({"slope": s, "stabilizer_dim": dim})
    generic = Counter(r["stabilizer_dim"] for r in rays).most_common(1)[0][0]
    jumps = [r for r in rays if r["stabilizer_dim"] > generic]
    if not jumps:
        raise FormError("no stabiliser jump found along the pencil")
    return {"rays": rays, "generic_dim": generic, "jumps": jumps}


def ray_form(pencil: FormPencil, slope) -> KForm:
    return pencil.second if slope is None else pencil.first + pencil.second.scale(slope)


def invariant_pencil(basis: liealg.ReferenceBasis = liealg.REFERENCE, resolution: int = 4) -> FormPencil:
    forms = locate_invariant_forms(basis)
    return FormPencil(forms["gamma"], forms["*gamma"], resolution)
