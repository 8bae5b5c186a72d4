"""Virtual representation ring of Sp(1) / SO(3).

An irreducible is labelled by its highest weight ``n``; ``S^n`` has complex
dimension ``n + 1``.  Characters are Laurent polynomials in one weight
variable ``q``, stored as ``{weight: coefficient}``.  Plethysms go through
Adams operations and Newton's identities with exact rational intermediates.
"""
from __future__ import annotations

import json
import re
from collections import Counter
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Iterable, Mapping


class RepError(ValueError):
    pass


class Character:
    """Laurent polynomial sum c_w q^w with integer (or rational) coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self._c = {int(w): c for w, c in (coeffs or {}).items() if c}

    @classmethod
    def from_weights(cls, weights: Iterable[int]) -> "Character":
        return cls(Counter(weights))

    @property
    def coefficients(self) -> dict[int, int]:
        return dict(self._c)

    def __getitem__(self, w: int):
        return self._c.get(w, 0)

    def __eq__(self, other):
        if not isinstance(other, Character):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __repr__(self):
        terms = " + ".join(f"{c}q^{w}" for w, c in sorted(self._c.items(), reverse=True))
        return f"Character({terms or '0'})"

    def __add__(self, other: "Character") -> "Character":
        out = dict(self._c)
        for w, c in other._c.items():
            out[w] = out.get(w, 0) + c
        return Character(out)

    def __sub__(self, other: "Character") -> "Character":
        return self + other.scale(-1)

    def scale(self, k) -> "Character":
        return Character({w: k * c for w, c in self._c.items()})

    def __mul__(self, other: "Character") -> "Character":
        out: dict[int, int] = {}
        for w1, c1 in self._c.items():
            for w2, c2 in other._c.items():
                out[w1 + w2] = out.get(w1 + w2, 0) + c1 * c2
        return Character(out)

    def evaluate(self, q=1):
        """Value at q; at q = 1 this is the (complex) dimension."""
        q = Fraction(q)
        return sum(c * q**w for w, c in self._c.items())

    def adams(self, m: int) -> "Character":
        """psi^m: chi(q) -> chi(q^m)."""
        return Character({m * w: c for w, c in self._c.items()})

    def is_symmetric(self) -> bool:
        return all(self._c.get(-w, 0) == c for w, c in self._c.items())

    def weights(self) -> list[int]:
        """Weight multiset; requires non-negative integer coefficients."""
        out = []
        for w, c in sorted(self._c.items(), reverse=True):
            if c < 0 or Fraction(c).denominator != 1:
                raise RepError("weight multiset needs non-negative integer coefficients")
            out.extend([w] * int(c))
        return out


class VirtualRep(Mapping[int, int]):
    """Formal integer combination of irreducibles S^n.

    Immutable; behaves as a read-only mapping ``n -> multiplicity`` with
    zero multiplicities dropped.
    """

    __slots__ = ("_m",)

    def __init__(self, mults: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = mults.items() if isinstance(mults, Mapping) else mults
        m: dict[int, int] = {}
        for n, k in items:
            n, k = int(n), int(k)
            if n < 0:
                raise RepError(f"negative highest weight {n}")
            m[n] = m.get(n, 0) + k
        self._m = {n: k for n, k in sorted(m.items(), reverse=True) if k}

    def __getitem__(self, n: int) -> int:
        return self._m.get(n, 0)

    def __iter__(self):
        return iter(self._m)

    def __len__(self):
        return len(self._m)

    def __contains__(self, n):
        return n in self._m

    def __eq__(self, other):
        if isinstance(other, VirtualRep):
            return self._m == other._m
        if isinstance(other, Mapping):
            return self._m == {n: k for n, k in other.items() if k}
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._m.items()))

    def __repr__(self):
        return f"VirtualRep({str(self)!r})"

    def __str__(self):
        if not self._m:
            return "0"
        parts = []
        for n, k in self._m.items():
            coeff = "" if k == 1 else ("-" if k == -1 else str(k))
            parts.append(f"{coeff}S{n}")
        return " + ".join(parts).replace("+ -", "- ")

    def __add__(self, other: "VirtualRep") -> "VirtualRep":
        return VirtualRep(list(self._m.items()) + list(other._m.items()))

    def __sub__(self, other: "VirtualRep") -> "VirtualRep":
        return self + (-other)

    def __neg__(self) -> "VirtualRep":
        return VirtualRep({n: -k for n, k in self._m.items()})

    def __rmul__(self, k: int) -> "VirtualRep":
        if not isinstance(k, int):
            return NotImplemented
        return VirtualRep({n: k * m for n, m in self._m.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return other * self
        return tensor(self, other)

    @property
    def dim(self) -> int:
        """Complex dimension."""
        return sum(k * (n + 1) for n, k in self._m.items())

    def is_genuine(self) -> bool:
        return all(k > 0 for k in self._m.values())

    def to_json(self) -> dict[str, int]:
        return {f"S{n}": k for n, k in self._m.items()}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data) -> "VirtualRep":
        if isinstance(data, str):
            data = json.loads(data)
        out = []
        for key, k in data.items():
            if not re.fullmatch(r"S\d+", key):
                raise RepError(f"bad irreducible key {key!r}")
            out.append((int(key[1:]), int(k)))
        return cls(out)

    @classmethod
    def parse(cls, text: str) -> "VirtualRep":
        """Parse expressions such as ``"S2+S4"``, ``"2S6 + S4 - 3S2"`` or ``"0"``."""
        s = text.replace(" ", "").replace("⊕", "+")
        if s in ("", "0"):
            return cls()
        if s[0] not in "+-":
            s = "+" + s
        pieces = re.findall(r"([+-])(\d*)S(\d+)", s)
        if "".join(f"{a}{b}S{c}" for a, b, c in pieces) != s:
            raise RepError(f"cannot parse representation {text!r}")
        return cls((int(n), (-1 if sign == "-" else 1) * int(k or 1)) for sign, k, n in pieces)


def irreducible(n: int) -> VirtualRep:
    if not isinstance(n, int) or n < 0:
        raise RepError(f"irreducible label must be a non-negative integer, got {n!r}")
    return VirtualRep({n: 1})


def irreducible_character(n: int) -> Character:
    return Character({n - 2 * k: 1 for k in range(n + 1)})


def to_character(r: VirtualRep) -> Character:
    out: dict[int, int] = {}
    for n, k in r.items():
        for j in range(n + 1):
            w = n - 2 * j
            out[w] = out.get(w, 0) + k
    return Character(out)


def decompose(c: Character) -> VirtualRep:
    """Inverse of :func:`to_character`, peeling highest weights greedily."""
    if not c.is_symmetric():
        raise RepError("character is not symmetric under w -> -w")
    rest = dict(c.coefficients)
    out = {}
    while rest:
        top = max(rest)
        k = rest[top]
        if top < 0 or Fraction(k).denominator != 1:
            raise RepError(f"character is not a virtual representation (leftover {rest})")
        out[top] = int(k)
        for j in range(top + 1):
            w = top - 2 * j
            v = rest.get(w, 0) - k
            if v:
                rest[w] = v
            else:
                rest.pop(w, None)
    return VirtualRep(out)


def tensor(a: VirtualRep, b: VirtualRep) -> VirtualRep:
    """Clebsch-Gordan: S^n x S^m = S^{n+m} + S^{n+m-2} + ... + S^{|n-m|}."""
    out: dict[int, int] = {}
    for n, k in a.items():
        for m, l in b.items():
            for j in range(abs(n - m), n + m + 1, 2):
                out[j] = out.get(j, 0) + k * l
    return VirtualRep(out)


def _plethysm(r: VirtualRep, k: int, sign: int) -> VirtualRep:
    if not isinstance(k, int) or k < 0:
        raise RepError(f"power must be a non-negative integer, got {k!r}")
    if not r.is_genuine():
        raise RepError("plethysms are only defined for genuine representations")
    chi = to_character(r)
    powers = [Character({0: Fraction(1)})]
    for j in range(1, k + 1):
        acc = Character()
        for i in range(1, j + 1):
            term = chi.adams(i) * powers[j - i]
            acc = acc + (term.scale(sign ** (i - 1)))
        powers.append(acc.scale(Fraction(1, j)))
    top = powers[k]
    for w, c in top.coefficients.items():
        if Fraction(c).denominator != 1:
            raise ArithmeticError(f"non-integral coefficient {c} at weight {w}")
    return decompose(Character({w: int(c) for w, c in top.coefficients.items()}))


def exterior_power(r: VirtualRep, k: int) -> VirtualRep:
    """Lambda^k r via k L_k = sum_i (-1)^(i-1) psi^i L_{k-i}."""
    return _plethysm(r, k, -1)


def symmetric_power(r: VirtualRep, k: int) -> VirtualRep:
    """S^k r via k S_k = sum_i psi^i S_{k-i}."""
    return _plethysm(r, k, 1)


def real_dimension(r: VirtualRep) -> tuple[int, list[dict]]:
    """Real dimension with the per-summand convention used.

    Even labels are of real type (real dimension n + 1); odd labels are
    quaternionic and realify to real dimension 2(n + 1).
    """
    total = 0
    report = []
    for n, k in r.items():
        if n % 2 == 0:
            kind, d = "real", n + 1
        else:
            kind, d = "quaternionic", 2 * (n + 1)
        total += k * d
        report.append({"irrep": f"S{n}", "mult": k, "type": kind, "real_dim": k * d})
    return total, report


# -- brute-force oracles --------------------------------------------------

def weight_multiset(r: VirtualRep) -> list[int]:
    return to_character(r).weights()


def brute_exterior_power(r: VirtualRep, k: int) -> VirtualRep:
    """Lambda^k by enumerating k-subsets of the weight multiset."""
    ws = weight_multiset(r)
    return decompose(Character.from_weights(sum(c) for c in combinations(ws, k)))


def brute_symmetric_power(r: VirtualRep, k: int) -> VirtualRep:
    ws = weight_multiset(r)
    return decompose(Character.from_weights(sum(c) for c in combinations_with_replacement(ws, k)))


def brute_tensor(a: VirtualRep, b: VirtualRep) -> VirtualRep:
    wa, wb = weight_multiset(a), weight_multiset(b)
    return decompose(Character.from_weights(x + y for x in wa for y in wb))


H = irreducible(1)
V = irreducible(2)
E = irreducible(3)
W = irreducible(4)
TANGENT = V + W
