"""Relabeling of cubulations and canonical forms up to combinatorial equivalence.

Two cubulations are equivalent when a permutation of the hypercubes together
with one hyperoctahedral isometry per hypercube carries the pairings of one
onto the pairings of the other.

The canonical form is the smallest pairing code over a family of labelings
built by breadth-first search: pick a start cube and an isometry for it
(``384 n`` choices), then walk facets in label order; each newly reached cube
gets the next label and the unique isometry that turns the pairing through
which it was reached into the reflection across that facet.  The family is
defined equivariantly, so equivalent inputs produce the same family and
the minimum is exact for every ``n`` (the incidence graph is connected).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .cubulation import Cubulation, Pairing, components
from .hypercube import Facet, apply_to_facet, facet_from_local, to_intrinsic
from .signed_perm import SignedPerm, all_signed_perms, compose, invert, perm_index

DEFAULT_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    pass


@lru_cache(maxsize=None)
def b4_algebra():
    """Integer tables for the hyperoctahedral group B4.

    Returns ``(elements, comp, inv, facet_act, reflect)`` with
    ``comp[x][y]`` the index of "x after y", ``facet_act[g][f]`` the image of
    local facet ``f`` and ``reflect[a]`` the reflection ``e_a -> -e_a``.
    """
    elements = all_signed_perms(4)
    index = perm_index(4)
    comp = [[index[compose(y, x)] for y in elements] for x in elements]
    inv = [index[invert(x)] for x in elements]
    facet_act = [[apply_to_facet(g, facet_from_local(0, f)).local for f in range(8)] for g in elements]
    reflect = {}
    for a in (1, 2, 3, 4):
        images = [1, 2, 3, 4]
        images[a - 1] = -a
        reflect[a] = index[SignedPerm(tuple(images))]
    return elements, comp, inv, facet_act, reflect


def relabel(c: Cubulation, perm: Sequence[int], isometries: Sequence[SignedPerm]) -> Cubulation:
    """Move old cube ``i`` to ``perm[i]`` through the isometry ``isometries[i]``."""
    def move(f: Facet) -> Facet:
        return apply_to_facet(isometries[f.cube], f, cube=perm[f.cube])

    pairings = []
    for p in c.pairings:
        gi, gj = isometries[p.source.cube], isometries[p.target.cube]
        amb = compose(compose(invert(gi), p.ambient), gj)
        src, tgt = move(p.source), move(p.target)
        pairings.append(Pairing(src, tgt, to_intrinsic(src, tgt, amb)))
    return Cubulation.build(c.n, pairings, [move(f) for f in c.open_facets])


def random_relabeling(n: int, rng: random.Random) -> tuple[list[int], list[SignedPerm]]:
    perm = list(range(n))
    rng.shuffle(perm)
    group = all_signed_perms(4)
    return perm, [rng.choice(group) for _ in range(n)]


def _partner_table(c: Cubulation):
    index = perm_index(4)
    table = {}
    for f, p in c.partner.items():
        table[(f.cube, f.local)] = (p.target.cube, p.target.local, index[p.ambient])
    return table


def _bfs_key(n, table, start, g0, comp, inv, facet_act, reflect):
    new_of = [-1] * n
    g_of = [0] * n
    order = [start]
    new_of[start] = 0
    g_of[start] = g0
    for i in order:
        gi = g_of[i]
        ginv = inv[gi]
        for fnew in range(8):
            j, _, G = table[(i, facet_act[ginv][fnew])]
            if new_of[j] < 0:
                new_of[j] = len(order)
                order.append(j)
                g_of[j] = comp[reflect[fnew // 2 + 1]][comp[gi][inv[G]]]
    codes = []
    base = 8 * n
    for (i, f), (j, f2, G) in table.items():
        gi, gj = g_of[i], g_of[j]
        a = 8 * new_of[i] + facet_act[gi][f]
        b = 8 * new_of[j] + facet_act[gj][f2]
        if a < b:
            codes.append((a * base + b) * 384 + comp[gj][comp[G][inv[gi]]])
    codes.sort()
    return tuple(codes), new_of, g_of


@dataclass(frozen=True, order=True)
class CanonicalForm:
    key: tuple[int, ...]
    text: str

    def encode(self) -> bytes:
        return self.text.encode()

    def compact(self) -> str:
        """Single-line form used in census files."""
        return ";".join(self.text.splitlines()[1:])


def canonical_form(c: Cubulation, budget: int = DEFAULT_BUDGET) -> CanonicalForm:
    if not c.complete:
        raise ValueError("canonical form needs a complete cubulation")
    if len(components(c)) > 1:
        raise ValueError("canonical form needs a connected cubulation")
    starts = 384 * c.n
    if starts > budget:
        raise BudgetExceeded(f"{starts} labelings exceed budget {budget}")
    elements, comp, inv, facet_act, reflect = b4_algebra()
    table = _partner_table(c)
    best = None
    for start in range(c.n):
        for g0 in range(384):
            key, new_of, g_of = _bfs_key(c.n, table, start, g0, comp, inv, facet_act, reflect)
            if best is None or key < best[0]:
                best = (key, new_of, g_of)
    key, new_of, g_of = best
    relabeled = relabel(c, new_of, [elements[g] for g in g_of])
    return CanonicalForm(key, relabeled.serialize())


def canonical_cubulation(c: Cubulation, **kw) -> Cubulation:
    from .cubulation import parse

    return parse(canonical_form(c, **kw).text)


def are_equivalent(a: Cubulation, b: Cubulation, **kw) -> bool:
    if a.n != b.n:
        return False
    return canonical_form(a, **kw).key == canonical_form(b, **kw).key


def from_compact(n: int, compact: str) -> Cubulation:
    from .cubulation import parse

    return parse(f"cubes {n}\n" + compact.replace(";", "\n") + "\n")
