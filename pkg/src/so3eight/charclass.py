"""Characteristic classes on the splitting-principle line.

Everything lives in Q[x]/(x^5) with deg x = 2, i.e. cohomology up to
degree 8.  Bundles are given by the weights of their line-bundle
decomposition: a weight w stands for L^w, whose Chern character is e^{wx}.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, lcm
from typing import Iterable, Sequence

TOP = 4  # highest power of x kept


class GradedPoly:
    """Truncated polynomial c0 + c1 x + ... + c4 x^4 with rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        c = [Fraction(x) for x in coeffs][: TOP + 1]
        c += [Fraction(0)] * (TOP + 1 - len(c))
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, k: int, c=1) -> "GradedPoly":
        out = [0] * (TOP + 1)
        if k <= TOP:
            out[k] = c
        return cls(out)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k <= TOP else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GradedPoly([other])
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = _lift(other)
        return GradedPoly(a + b for a, b in zip(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return GradedPoly(-a for a in self.coeffs)

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        out = [Fraction(0)] * (TOP + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(TOP + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return GradedPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = GradedPoly([1])
        for _ in range(n):
            out = out * self
        return out

    def __repr__(self):
        return f"GradedPoly({self})"

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            mag = abs(c)
            coef = str(mag) if (mag != 1 or k == 0) else ""
            if coef and mono and mag.denominator != 1:
                coef = f"({coef})"
            parts.append(("-" if c < 0 else "+", coef + mono))
        if not parts:
            return "0"
        s = "".join(f" {sign} {body}" for sign, body in parts).strip()
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def to_json(self) -> dict:
        return {f"x^{k}": f"{c.numerator}/{c.denominator}" for k, c in enumerate(self.coeffs) if c}

    def is_zero(self) -> bool:
        return not any(self.coeffs)


def _lift(x) -> GradedPoly:
    return x if isinstance(x, GradedPoly) else GradedPoly([x])


X = GradedPoly.monomial(1)


@dataclass(frozen=True)
class WeightBundle:
    """Formal sum of line bundles L^w, weights rational (half-integers allowed)."""

    weights: tuple

    def __init__(self, weights: Iterable):
        object.__setattr__(self, "weights", tuple(sorted((Fraction(w) for w in weights), reverse=True)))

    @classmethod
    def parse(cls, text: str) -> "WeightBundle":
        text = text.strip()
        return cls(Fraction(t.strip()) for t in text.split(",") if t.strip()) if text else cls(())

    @property
    def rank(self) -> int:
        return len(self.weights)

    def multiset(self) -> Counter:
        return Counter(self.weights)

    def conjugate(self) -> "WeightBundle":
        return WeightBundle(-w for w in self.weights)

    def is_self_conjugate(self) -> bool:
        return self.multiset() == self.conjugate().multiset()

    def __add__(self, other: "WeightBundle") -> "WeightBundle":
        return WeightBundle(self.weights + other.weights)

    def __mul__(self, other: "WeightBundle") -> "WeightBundle":
        return WeightBundle(a + b for a in self.weights for b in other.weights)

    def shift(self, s) -> "WeightBundle":
        return WeightBundle(w + Fraction(s) for w in self.weights)

    def __str__(self):
        return ",".join(str(w) for w in self.weights)


# V_c = L + Lbar + C, S^2_0 V_c = L^2 + Lbar^2 + L + Lbar + C
V_C = WeightBundle([1, -1, 0])
W_C = WeightBundle([2, -2, 1, -1, 0])
T_C = V_C + W_C
# E = S^3 H with H = L^{1/2} + L^{-1/2}
E_BUNDLE = WeightBundle([Fraction(3, 2), Fraction(1, 2), Fraction(-1, 2), Fraction(-3, 2)])


def exp_series(w) -> GradedPoly:
    w = Fraction(w)
    return GradedPoly(w**k / factorial(k) for k in range(TOP + 1))


def chern_character(b: WeightBundle) -> GradedPoly:
    out = GradedPoly()
    for w in b.weights:
        out = out + exp_series(w)
    return out


def chern_class(b: WeightBundle) -> GradedPoly:
    """Total Chern class prod(1 + w x)."""
    out = GradedPoly([1])
    for w in b.weights:
        out = out * GradedPoly([1, w])
    return out


def pontrjagin(b: WeightBundle) -> tuple[GradedPoly, GradedPoly]:
    """(p1, p2) of a self-conjugate bundle: elementary symmetric functions of w^2 over +- pairs."""
    if not b.is_self_conjugate():
        raise ValueError(f"bundle {b} is not self-conjugate")
    counts = b.multiset()
    squares = []
    for w, k in sorted(counts.items()):
        if w > 0:
            squares.extend([w * w] * k)
    e1 = sum(squares, Fraction(0))
    e2 = sum((squares[i] * squares[j] for i in range(len(squares)) for j in range(i + 1, len(squares))), Fraction(0))
    return GradedPoly.monomial(2, e1), GradedPoly.monomial(4, e2)


def pontrjagin_from_chern_character(ch: GradedPoly) -> tuple[GradedPoly, GradedPoly]:
    """Invert ch = rank + p1 + (p1^2 - 2 p2)/12 on the line model."""
    p1 = GradedPoly.monomial(2, ch[2])
    p1sq = p1 * p1
    p2 = GradedPoly.monomial(4, (p1sq[4] - 12 * ch[4]) / 2)
    return p1, p2


# -- genera ------------------------------------------------------------------

def l_genus(p1: GradedPoly, p2: GradedPoly) -> GradedPoly:
    return GradedPoly([1]) + p1 * Fraction(1, 3) + (7 * p2 - p1 * p1) * Fraction(1, 45)


def a_hat_genus(p1: GradedPoly, p2: GradedPoly) -> GradedPoly:
    return GradedPoly([1]) - p1 * Fraction(1, 24) + (7 * p1 * p1 - 4 * p2) * Fraction(1, 5760)


def todd_quaternionic(c1: GradedPoly, p1: GradedPoly, c3: GradedPoly) -> GradedPoly:
    """Todd class of a complexified real bundle with c2 = -p1, c4 = p2 = p1^2/4:

    1 + c1/2 + (c1^2 - p1)/12 - c1 p1/24
      - (c1^4 + 4 c1^2 p1 - 11/4 p1^2 - c1 c3)/720
    """
    one = GradedPoly([1])
    deg8 = c1**4 + 4 * c1 * c1 * p1 - Fraction(11, 4) * p1 * p1 - c1 * c3
    return one + c1 * Fraction(1, 2) + (c1 * c1 - p1) * Fraction(1, 12) - c1 * p1 * Fraction(1, 24) - deg8 * Fraction(1, 720)


def todd_standard(c: GradedPoly) -> GradedPoly:
    """Todd class from Chern classes c1..c4 of a rank-4 bundle."""
    c1, c2, c3, c4 = (GradedPoly.monomial(k, c[k]) for k in range(1, 5))
    return (GradedPoly([1]) + c1 * Fraction(1, 2) + (c1 * c1 + c2) * Fraction(1, 12) + c1 * c2 * Fraction(1, 24)
            + (-(c1**4) + 4 * c1 * c1 * c2 + 3 * c2 * c2 + c1 * c3 - c4) * Fraction(1, 720))


def todd_product(b: WeightBundle) -> GradedPoly:
    """prod t/(1 - e^{-t}) over the roots t = w x."""
    # t/(1-e^{-t}) = 1 + t/2 + t^2/12 - t^4/720 + ...
    series = (Fraction(1), Fraction(1, 2), Fraction(1, 12), Fraction(0), Fraction(-1, 720))
    out = GradedPoly([1])
    for w in b.weights:
        out = out * GradedPoly(s * Fraction(w) ** k for k, s in enumerate(series))
    return out


def todd_cross_check(b: WeightBundle = T_C) -> dict:
    """Compare the displayed expansion with the product formula on ``b``."""
    p1, p2 = pontrjagin(b)
    product = todd_product(b)
    display = genus_eval("todd", p1, p2, chern_class(b))
    return {"product": str(product), "display": str(display),
            "constraint_holds": 4 * p2 == p1 * p1, "agree": product == display}


def genus_eval(which: str, p1: GradedPoly, p2: GradedPoly | None = None, chern: GradedPoly | None = None) -> GradedPoly:
    """Evaluate the L, A-hat or Todd genus; the degree-8 term is ``result[4]``."""
    which = which.lower()
    if which == "l":
        return l_genus(p1, p2)
    if which in ("a", "ahat", "â"):
        return a_hat_genus(p1, p2)
    if which == "todd":
        if chern is None:
            raise ValueError("Todd genus needs Chern data")
        c1 = GradedPoly.monomial(1, chern[1])
        c3 = GradedPoly.monomial(3, chern[3])
        return todd_quaternionic(c1, p1, c3)
    raise ValueError(f"unknown genus {which!r}")


# -- integrality and obstructions ---------------------------------------------

PSU3_FACTOR = 216  # p1^2 in 216Z for compact PSU(3)-manifolds


def todd_factor() -> int:
    """Denominator of the p1^2 coefficient of the degree-8 Todd term at c1 = 0."""
    zero = GradedPoly()
    coeff = todd_quaternionic(zero, GradedPoly.monomial(2, 1), zero)[4]
    return coeff.denominator


def divisibility_bound() -> dict:
    t = todd_factor()
    return {"todd_factor": t, "psu3_factor": PSU3_FACTOR, "bound": lcm(t, PSU3_FACTOR)}


def obstruction_check(e: int, p1sq: int, p2: int) -> dict:
    bound = divisibility_bound()["bound"]
    rel = {
        "quaternionic_relation": 8 * e + p1sq - 4 * p2 == 0,
        "four_p2_eq_p1sq": 4 * p2 == p1sq,
        "divisibility": p1sq % bound == 0,
        "euler_zero": e == 0,
    }
    return {"e": e, "p1sq": p1sq, "p2": p2, "relations": rel, "admissible": all(rel.values())}


# -- almost complex structures --------------------------------------------------

BASE_STRUCTURES = {
    "J": WeightBundle([2, -1, -1, 0]),    # L^2 + 2 Lbar + C
    "J'": WeightBundle([2, 1, 1, 0]),     # L^2 + L + L + C
    "J''": WeightBundle([2, -1, 1, 0]),   # L^2 + Lbar + L + C
}


def twistor_weights() -> WeightBundle:
    """E (x) L^{1/2}."""
    return E_BUNDLE.shift(Fraction(1, 2))


def acs_classify(j: WeightBundle, tangent: WeightBundle = T_C) -> str:
    """'quaternionic' or 'non-quaternionic' for a (1,0)-weight list."""
    if (j + j.conjugate()).multiset() != tangent.multiset():
        raise ValueError(f"weights {j} and their conjugates do not reassemble the tangent bundle")
    tw = twistor_weights()
    if j.multiset() in (tw.multiset(), tw.conjugate().multiset()):
        return "quaternionic"
    return "non-quaternionic"


def acs_report() -> dict:
    base = {name: acs_classify(b) for name, b in BASE_STRUCTURES.items()}
    conj = {f"-{name}": acs_classify(b.conjugate()) for name, b in BASE_STRUCTURES.items()}
    return {
        "base": base,
        "conjugates": conj,
        "conjugate_count": len(conj),
        "weights": {name: str(b) for name, b in BASE_STRUCTURES.items()},
    }


def report(bundle: WeightBundle = T_C) -> dict:
    """The document emitted by ``charclass report``."""
    ch = chern_character(bundle)
    p1, p2 = pontrjagin(bundle)
    p1sq = p1 * p1
    euler = (4 * p2 - p1sq) * Fraction(1, 8)
    lg = l_genus(p1, p2)
    ah = a_hat_genus(p1, p2)
    bound = divisibility_bound()
    return {
        "weights": [str(w) for w in bundle.weights],
        "ch": {"text": str(ch), "coeffs": ch.to_json()},
        "p1": {"text": str(p1), "coeffs": p1.to_json()},
        "p2": {"text": str(p2), "coeffs": p2.to_json()},
        "relations": {
            "four_p2_eq_p1sq": 4 * p2 == p1sq,
            "euler_zero": euler.is_zero(),
            "divisibility": bound,
        },
        "genera": {
            "L2": str(GradedPoly.monomial(4, lg[4])),
            "Ahat2": str(GradedPoly.monomial(4, ah[4])),
            "sigma_over_p1sq": _ratio(lg[4], p1sq[4]),
            "Ahat2_over_p1sq": _ratio(ah[4], p1sq[4]),
        },
    }


def _ratio(a: Fraction, b: Fraction):
    return None if not b else f"{(a / b).numerator}/{(a / b).denominator}"
