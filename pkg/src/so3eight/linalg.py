"""Exact rational linear algebra.

Vectors are tuples of ``Fraction``; matrices are tuples of row tuples.
Every rank decision goes through the integer elimination kernel in
:mod:`so3eight.kernels`, so no floating point is involved anywhere.
"""
from __future__ import annotations

import json
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from so3eight.kernels import rref_int

Vector = tuple
Matrix = tuple


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def vec(xs: Iterable) -> Vector:
    return tuple(frac(x) for x in xs)


def integer_row(v: Sequence) -> list[int]:
    """Scale a rational vector to an integer one with the same span."""
    d = 1
    for x in v:
        if isinstance(x, Fraction) and x.denominator != 1:
            d = lcm(d, x.denominator)
    if d == 1:
        return [int(x) for x in v]
    return [int(x * d) for x in v]


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[Vector], list[int]]:
    """Rational RREF (pivots equal to one) of ``rows``."""
    red, piv = rref_int([integer_row(r) for r in rows], ncols)
    out = []
    for r, p in zip(red, piv):
        lead = r[p]
        out.append(tuple(Fraction(x, lead) for x in r))
    return out, piv


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    if ncols is None:
        if not rows:
            return 0
        ncols = len(rows[0])
    return len(rref_int([integer_row(r) for r in rows], ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Basis of {x : rows @ x = 0}, one vector per free column."""
    red, piv = rref_int([integer_row(r) for r in rows], ncols)
    pivset = set(piv)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, p in zip(red, piv):
            if r[f]:
                x[p] = Fraction(-r[f], r[p])
        basis.append(tuple(x))
    return basis


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = list(zip(*b))
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col) if x and y), Fraction(0)) for col in bt)
        for row in a
    )


def matvec(a: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(sum((x * y for x, y in zip(row, v) if x and y), Fraction(0)) for row in a)


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((x * y for x, y in zip(u, v) if x and y), Fraction(0))


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def zeros(n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return tuple(tuple(Fraction(0) for _ in range(m)) for _ in range(n))


def madd(a, b) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def msub(a, b) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def mscale(c, a) -> Matrix:
    c = frac(c)
    return tuple(tuple(c * x for x in r) for r in a)


def bracket(a, b) -> Matrix:
    return msub(matmul(a, b), matmul(b, a))


def trace(a) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def is_zero(a) -> bool:
    if a and isinstance(a[0], tuple):
        return all(not x for r in a for x in r)
    return all(not x for x in a)


def fmt(x: Fraction) -> str:
    x = frac(x)
    return f"{x.numerator}/{x.denominator}"


class Subspace:
    """A linear subspace of Q^n, stored by its canonical RREF basis.

    Two ``Subspace`` objects are equal exactly when they span the same
    space.  ``vectors`` keeps the generating vectors as given (linearly
    independent after construction); ``rows`` holds the RREF.
    """

    __slots__ = ("ambient", "rows", "pivots", "vectors")

    def __init__(self, ambient: int, vectors: Iterable[Sequence] = ()):
        vectors = [vec(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient:
                raise ValueError(f"vector of length {len(v)} in ambient {ambient}")
        self.ambient = ambient
        self.rows, self.pivots = rref(vectors, ambient)
        if len(vectors) == len(self.rows):
            self.vectors = tuple(vectors)
        else:
            self.vectors = tuple(self.rows)

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, ())

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls(ambient, identity(ambient))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return self.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.rows == other.rows

    def __hash__(self):
        return hash((self.ambient, tuple(self.rows)))

    def __repr__(self) -> str:
        return f"Subspace(ambient={self.ambient}, dim={self.dim})"

    def _check(self, other: "Subspace"):
        if self.ambient != other.ambient:
            raise ValueError(f"ambient mismatch: {self.ambient} vs {other.ambient}")

    def coordinates(self, v: Sequence) -> Vector:
        """Coordinates of ``v`` in the RREF basis; raises if v is not in the span."""
        c = tuple(frac(v[p]) for p in self.pivots)
        recon = [Fraction(0)] * self.ambient
        for ci, r in zip(c, self.rows):
            if ci:
                for j, x in enumerate(r):
                    if x:
                        recon[j] += ci * x
        if any(a != frac(b) for a, b in zip(recon, v)):
            raise ValueError("vector not in subspace")
        return c

    def contains(self, v: Sequence) -> bool:
        try:
            self.coordinates(v)
        except ValueError:
            return False
        return True

    def issubspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(r) for r in self.rows)

    def __le__(self, other: "Subspace") -> bool:
        return self.issubspace(other)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.ambient, list(self.rows) + list(other.rows))

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if not self.dim or not other.dim:
            return Subspace.zero(self.ambient)
        # columns a_1..a_p, -b_1..-b_q ; kernel gives a-combinations in both
        cols = list(self.rows) + [tuple(-x for x in r) for r in other.rows]
        ker = nullspace(transpose(cols), len(cols))
        p = self.dim
        out = []
        for k in ker:
            v = [Fraction(0)] * self.ambient
            for coeff, r in zip(k[:p], self.rows):
                if coeff:
                    for j, x in enumerate(r):
                        if x:
                            v[j] += coeff * x
            out.append(v)
        return Subspace(self.ambient, out)

    def complement(self, gram: Sequence[Sequence] | None = None) -> "Subspace":
        """Orthogonal complement for ``gram`` (standard dot product if None)."""
        if not self.dim:
            return Subspace.full(self.ambient)
        rows = self.rows if gram is None else [matvec(gram, r) for r in self.rows]
        return Subspace(self.ambient, nullspace(rows, self.ambient))

    def relative_complement(self, sub: "Subspace", gram=None) -> "Subspace":
        """Orthogonal complement of ``sub`` inside ``self``."""
        if not sub.issubspace(self):
            raise ValueError("not a subspace")
        return self.intersect(sub.complement(gram))

    def to_json(self) -> dict:
        return {"ambient": self.ambient, "basis": [[fmt(x) for x in v] for v in self.vectors]}

    @classmethod
    def from_json(cls, data) -> "Subspace":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["ambient"], [[Fraction(x) for x in v] for v in data["basis"]])


def independent(subspaces: Sequence[Subspace]) -> bool:
    """True when the sum of the subspaces is direct."""
    if not subspaces:
        return True
    total = sum(s.dim for s in subspaces)
    rows = [r for s in subspaces for r in s.rows]
    return rank(rows, subspaces[0].ambient) == total


def action_on(sub: Subspace, op: Sequence[Sequence]) -> Matrix:
    """Matrix of the operator ``op`` restricted to the invariant subspace ``sub``.

    Column j holds the coordinates of ``op @ basis_j``; raises ValueError if
    ``sub`` is not invariant.
    """
    cols = [sub.coordinates(matvec(op, r)) for r in sub.rows]
    return tuple(tuple(c[i] for c in cols) for i in range(sub.dim))
