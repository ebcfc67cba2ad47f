"""Combinatorics of the hypercube [-1, 1]^4: facets, square faces and frames.

Conventions used throughout the package:

* Facet ``(a, s)`` is the cube ``x_a = s``.  Its intrinsic coordinates are
  the three remaining ambient axes in increasing order, numbered 1..3.
* A pairing isometry from facet ``F1`` to facet ``F2`` is a degree-3
  signed permutation from intrinsic(F1) to intrinsic(F2).  Equivalently it
  is the unique symmetry ``G`` of the hypercube with ``G(F1) = F2`` (so
  outward normal to outward normal) agreeing with the intrinsic map on
  tangent directions.  The actual gluing is ``G`` followed by the reflection
  in ``F2``; it preserves the orientation of R^4, i.e. the pairing reverses
  boundary orientation, iff ``det G = -1``.  ``G`` is what the rest of the
  package works with ("ambient form").
* Square ``{a, b}(s_a, s_b)`` is the face ``x_a = s_a, x_b = s_b``; its
  tangent plane is spanned by the two other axes.
"""
from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

from .signed_perm import SignedPerm, all_signed_perms

AXES = (1, 2, 3, 4)


class Facet(NamedTuple):
    cube: int
    axis: int
    sign: int

    def __str__(self) -> str:
        return f"{self.cube}.{'+' if self.sign > 0 else '-'}{self.axis}"

    @classmethod
    def parse(cls, text: str) -> "Facet":
        cube, _, rest = text.partition(".")
        if not rest or rest[0] not in "+-" or not cube.isdigit() or not rest[1:].isdigit():
            raise ValueError(f"bad facet {text!r}")
        axis = int(rest[1:])
        if axis not in AXES:
            raise ValueError(f"bad axis in facet {text!r}")
        return cls(int(cube), axis, 1 if rest[0] == "+" else -1)

    @property
    def local(self) -> int:
        """Index 0..7 of the facet inside its hypercube."""
        return 2 * (self.axis - 1) + (self.sign > 0)

    def opposite(self) -> "Facet":
        return Facet(self.cube, self.axis, -self.sign)


def facet_from_local(cube: int, local: int) -> Facet:
    return Facet(cube, local // 2 + 1, 1 if local % 2 else -1)


class SquareFace(NamedTuple):
    cube: int
    axes: tuple[int, int]
    signs: tuple[int, int]

    def __str__(self) -> str:
        (a, b), (sa, sb) = self.axes, self.signs
        return f"{self.cube}.{{{a},{b}}}({'+' if sa > 0 else '-'},{'+' if sb > 0 else '-'})"

    @property
    def facets(self) -> tuple[Facet, Facet]:
        (a, b), (sa, sb) = self.axes, self.signs
        return Facet(self.cube, a, sa), Facet(self.cube, b, sb)

    @property
    def tangent_axes(self) -> tuple[int, int]:
        c, d = (x for x in AXES if x not in self.axes)
        return c, d

    @property
    def local(self) -> int:
        return SQUARE_INDEX[(self.axes, self.signs)]


def make_square(cube: int, a: int, sa: int, b: int, sb: int) -> SquareFace:
    if a > b:
        a, sa, b, sb = b, sb, a, sa
    return SquareFace(cube, (a, b), (sa, sb))


# local squares 0..23, ordered by (axis pair, signs)
LOCAL_SQUARES: tuple[tuple[tuple[int, int], tuple[int, int]], ...] = tuple(
    ((a, b), (sa, sb))
    for a in AXES for b in AXES if a < b
    for sa in (-1, 1) for sb in (-1, 1)
)
SQUARE_INDEX = {key: i for i, key in enumerate(LOCAL_SQUARES)}


def square_from_local(cube: int, local: int) -> SquareFace:
    axes, signs = LOCAL_SQUARES[local]
    return SquareFace(cube, axes, signs)


def squares_of_cube(cube: int) -> list[SquareFace]:
    return [square_from_local(cube, i) for i in range(24)]


class SquareFrame(NamedTuple):
    """An ordered pair of signed ambient axes spanning the tangent plane of a square."""

    square: SquareFace
    tangent1: int
    tangent2: int


def standard_frame(q: SquareFace) -> SquareFrame:
    c, d = q.tangent_axes
    return SquareFrame(q, c, d)


def intrinsic_axes(axis: int) -> tuple[int, int, int]:
    a, b, c = (x for x in AXES if x != axis)
    return a, b, c


def facet_orientation_sign(f: Facet) -> int:
    """Sign of det(intrinsic e1, e2, e3, outward normal) in R^4."""
    return f.sign * (-1) ** f.axis


def squares_of_facet(f: Facet) -> list[SquareFace]:
    return [
        make_square(f.cube, f.axis, f.sign, b, t)
        for b in intrinsic_axes(f.axis)
        for t in (-1, 1)
    ]


def contains(f: Facet, q: SquareFace) -> bool:
    return f.cube == q.cube and f in q.facets


def other_facet(q: SquareFace, f: Facet) -> Facet:
    f1, f2 = q.facets
    if f == f1:
        return f2
    if f == f2:
        return f1
    raise ValueError(f"facet {f} does not contain square {q}")


def to_ambient(source: Facet, target: Facet, m: SignedPerm) -> SignedPerm:
    """Ambient (degree-4) form of the intrinsic pairing map ``m``."""
    src, tgt = intrinsic_axes(source.axis), intrinsic_axes(target.axis)
    images = [0] * 4
    for k, image in enumerate(m.images):
        ax = tgt[abs(image) - 1]
        images[src[k] - 1] = ax if image > 0 else -ax
    images[source.axis - 1] = source.sign * target.sign * target.axis
    return SignedPerm(tuple(images))


def to_intrinsic(source: Facet, target: Facet, g: SignedPerm) -> SignedPerm:
    """Inverse of :func:`to_ambient`; ``g`` must carry ``source`` onto ``target``."""
    if g(source.sign * source.axis) != target.sign * target.axis:
        raise ValueError(f"{g} does not carry {source} onto {target}")
    tgt = intrinsic_axes(target.axis)
    images = []
    for ax in intrinsic_axes(source.axis):
        image = g(ax)
        k = tgt.index(abs(image)) + 1
        images.append(k if image > 0 else -k)
    return SignedPerm(tuple(images))


def apply_to_facet(g: SignedPerm, f: Facet, cube: int | None = None) -> Facet:
    image = g(f.sign * f.axis)
    return Facet(f.cube if cube is None else cube, abs(image), 1 if image > 0 else -1)


def apply_to_square(g: SignedPerm, q: SquareFace, cube: int | None = None) -> SquareFace:
    (a, b), (sa, sb) = q.axes, q.signs
    ia, ib = g(sa * a), g(sb * b)
    return make_square(
        q.cube if cube is None else cube,
        abs(ia), 1 if ia > 0 else -1,
        abs(ib), 1 if ib > 0 else -1,
    )


def map_square(pairing, q: SquareFace, frame: SquareFrame | None = None):
    """Carry a square of the source facet (and optionally a frame on it) across a pairing.

    ``pairing`` is anything with ``source``, ``target`` and ``map`` attributes
    (or a ``(source, target, map)`` triple).  Returns ``(square, frame)``.
    """
    source, target, m = pairing
    if not contains(source, q):
        raise ValueError(f"square {q} is not in source facet {source}")
    g = to_ambient(source, target, m)
    image = apply_to_square(g, q, cube=target.cube)
    new_frame = None
    if frame is not None:
        new_frame = SquareFrame(image, g(frame.tangent1), g(frame.tangent2))
    return image, new_frame


@lru_cache(maxsize=None)
def reversing_maps(source_axis: int, source_sign: int, target_axis: int, target_sign: int) -> tuple[SignedPerm, ...]:
    """The 24 intrinsic maps that reverse boundary orientation between two facet slots."""
    f1 = Facet(0, source_axis, source_sign)
    f2 = Facet(0, target_axis, target_sign)
    return tuple(m for m in all_signed_perms(3) if to_ambient(f1, f2, m).det() == -1)
