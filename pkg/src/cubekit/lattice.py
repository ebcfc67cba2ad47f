"""Recovering the cusp length h from the translation lattice of a flat cusp section.

For a section X = T x [0, h] / psi with T the 2x2 square torus, the integer h
is read off the similarity class of X: take the shortest pair of orthogonal
lattice vectors of equal length l for which 2 Vol(X) / l^3 is an integer.

Since h >= 1 we have l^3 <= 2 Vol(X), so only vectors with
|v| <= (2 Vol)^(1/3) matter.  There are finitely many lattice vectors in that
ball and they are listed by Fincke-Pohst enumeration, so the search
terminates.  All arithmetic deciding the answer is exact.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Vector = tuple[Fraction, Fraction, Fraction]


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class LatticeBasis:
    vectors: tuple[Vector, Vector, Vector]

    @classmethod
    def of(cls, *vectors: Sequence) -> "LatticeBasis":
        if len(vectors) != 3 or any(len(v) != 3 for v in vectors):
            raise LatticeError("a lattice basis needs three vectors in R^3")
        vs = tuple(tuple(Fraction(x) for x in v) for v in vectors)
        b = cls(vs)  # type: ignore[arg-type]
        if b.det() == 0:
            raise LatticeError("basis vectors are linearly dependent")
        return b

    def det(self) -> Fraction:
        (a, b, c), (d, e, f), (g, h, i) = self.vectors
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    def covolume(self) -> Fraction:
        return abs(self.det())

    def gram(self) -> list[list[Fraction]]:
        return [[dot(u, v) for v in self.vectors] for u in self.vectors]

    def combine(self, coeffs: Sequence[int]) -> Vector:
        return tuple(sum(c * v[k] for c, v in zip(coeffs, self.vectors)) for k in range(3))  # type: ignore[return-value]

    def scaled(self, t) -> "LatticeBasis":
        t = Fraction(t)
        return LatticeBasis(tuple(tuple(t * x for x in v) for v in self.vectors))  # type: ignore[arg-type]


def dot(u, v) -> Fraction:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _ldl(g) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Q(c) = sum_i d_i (c_i + sum_{j>i} mu_ij c_j)^2 for the Gram form g."""
    a = [row[:] for row in g]
    d = [Fraction(0)] * 3
    mu = [[Fraction(0)] * 3 for _ in range(3)]
    for i in range(3):
        d[i] = a[i][i]
        for j in range(i + 1, 3):
            mu[i][j] = a[i][j] / d[i]
        for j in range(i + 1, 3):
            for k in range(j, 3):
                a[j][k] -= d[i] * mu[i][j] * mu[i][k]
                a[k][j] = a[j][k]
    return d, mu


def _sqrt_int(q: Fraction) -> int | None:
    """The positive integer whose square is q, if any."""
    if q.denominator != 1 or q <= 0:
        return None
    r = math.isqrt(q.numerator)
    return r if r * r == q.numerator else None


def short_vectors(basis: LatticeBasis, norm_cap) -> dict[Fraction, list[Vector]]:
    """Nonzero lattice vectors with squared length <= norm_cap, grouped by squared length.

    Fincke-Pohst enumeration: coordinates are chosen from the last to the
    first, each inside the interval left by the partial quadratic form.
    Float square roots only size the intervals (padded by one); membership is
    decided exactly.
    """
    norm_cap = Fraction(norm_cap)
    d, mu = _ldl(basis.gram())
    out: dict[Fraction, list[Vector]] = {}
    c = [0, 0, 0]

    def rec(i: int, remaining: Fraction) -> None:
        if i < 0:
            if any(c):
                v = basis.combine(c)
                out.setdefault(norm_cap - remaining, []).append(v)
            return
        center = -sum((mu[i][j] * c[j] for j in range(i + 1, 3)), Fraction(0))
        r = math.sqrt(float(remaining / d[i]))
        for ci in range(math.floor(float(center) - r) - 1, math.ceil(float(center) + r) + 2):
            t = d[i] * (ci - center) ** 2
            if t <= remaining:
                c[i] = ci
                rec(i - 1, remaining - t)
        c[i] = 0

    rec(2, norm_cap)
    return out


def recover_h(basis: LatticeBasis, vol) -> int:
    """h = 2 vol / l^3 for the shortest orthogonal equal-length pair making it an integer."""
    vol = Fraction(vol)
    if vol <= 0:
        raise LatticeError("volume must be positive")
    two_vol_sq = (2 * vol) ** 2
    # radius cap 2 (2 vol)^(1/3) + 1, generous against float error; the exact
    # test l^6 <= (2 vol)^2 is applied per norm
    radius = 2 * float(2 * vol) ** (1 / 3) + 1
    cap = Fraction(radius * radius)
    for q, vecs in sorted(short_vectors(basis, cap).items()):
        if q ** 3 > two_vol_sq:
            break
        h_sq = two_vol_sq / q ** 3
        h = _sqrt_int(h_sq)
        if h is None:
            continue
        if any(dot(u, v) == 0 for u, v in itertools.combinations(vecs, 2)):
            return h
    raise LatticeError("no orthogonal equal-length pair with integral h within the length bound")


def family_basis(x: int, y: int, h) -> LatticeBasis:
    """Generators (2,0,0), (0,2,0), (x,y,h) of the lattices of flat sections with h = 1 style gluing."""
    return LatticeBasis.of((2, 0, 0), (0, 2, 0), (x, y, h))


FAMILIES = ((0, 0), (1, 0), (0, 1), (1, 1))
