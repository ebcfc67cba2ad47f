"""Signed permutations: the symmetry groups of the square, cube and hypercube.

A signed permutation of degree ``d`` is stored as a tuple of ``d`` nonzero
integers.  Entry ``k-1`` holds ``±m``: basis vector ``e_k`` goes to ``±e_m``.
The textual form ``"2 -1 3"`` reads the same way.

Composition is "apply the left argument first": ``compose(p, q)`` is the map
``x -> q(p(x))``.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator, NamedTuple, Sequence


class SignedPerm(NamedTuple):
    images: tuple[int, ...]

    @classmethod
    def identity(cls, degree: int) -> "SignedPerm":
        return cls(tuple(range(1, degree + 1)))

    @classmethod
    def parse(cls, text: str | Sequence[str]) -> "SignedPerm":
        tokens = text.split() if isinstance(text, str) else list(text)
        p = cls(tuple(int(t) for t in tokens))
        p.check()
        return p

    def check(self) -> None:
        d = len(self.images)
        if sorted(abs(m) for m in self.images) != list(range(1, d + 1)):
            raise ValueError(f"not a signed permutation: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __str__(self) -> str:
        return " ".join(str(m) for m in self.images)

    def __call__(self, axis: int) -> int:
        """Image of the signed basis vector ``sign(axis) * e_|axis|``."""
        m = self.images[abs(axis) - 1]
        return m if axis > 0 else -m

    @property
    def perm(self) -> tuple[int, ...]:
        return tuple(abs(m) for m in self.images)

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(1 if m > 0 else -1 for m in self.images)

    def det(self) -> int:
        """Determinant of the matrix: parity of the permutation times the signs."""
        sign = 1
        for m in self.images:
            if m < 0:
                sign = -sign
        return sign * _parity(self.perm)

    def matrix(self) -> list[list[int]]:
        """Matrix acting on column vectors (column k is the image of e_k)."""
        d = self.degree
        rows = [[0] * d for _ in range(d)]
        for k, m in enumerate(self.images):
            rows[abs(m) - 1][k] = 1 if m > 0 else -1
        return rows


def compose(p: SignedPerm, q: SignedPerm) -> SignedPerm:
    """Apply ``p`` first, then ``q``."""
    if p.degree != q.degree:
        raise ValueError("degree mismatch")
    return SignedPerm(tuple(q(m) for m in p.images))


def invert(p: SignedPerm) -> SignedPerm:
    out = [0] * p.degree
    for k, m in enumerate(p.images, start=1):
        out[abs(m) - 1] = k if m > 0 else -k
    return SignedPerm(tuple(out))


def _parity(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j] - 1
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def iter_signed_perms(degree: int) -> Iterator[SignedPerm]:
    """All ``2^d d!`` signed permutations in lexicographic order of ``images``."""
    for perm in itertools.permutations(range(1, degree + 1)):
        for signs in itertools.product((-1, 1), repeat=degree):
            yield SignedPerm(tuple(s * m for s, m in zip(signs, perm)))


@lru_cache(maxsize=None)
def all_signed_perms(degree: int) -> tuple[SignedPerm, ...]:
    return tuple(sorted(iter_signed_perms(degree)))


@lru_cache(maxsize=None)
def perm_index(degree: int) -> dict[SignedPerm, int]:
    return {p: i for i, p in enumerate(all_signed_perms(degree))}


def swap(i: int, j: int, degree: int = 3) -> SignedPerm:
    images = list(range(1, degree + 1))
    images[i - 1], images[j - 1] = images[j - 1], images[i - 1]
    return SignedPerm(tuple(images))


def negate(axis: int, degree: int = 3) -> SignedPerm:
    images = list(range(1, degree + 1))
    images[axis - 1] = -images[axis - 1]
    return SignedPerm(tuple(images))
