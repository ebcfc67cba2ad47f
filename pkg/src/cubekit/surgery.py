"""Surgeries on cubulations: merger gadgets (flowers), splitters, reduction and cyclic covers.

A gadget is a single hypercube with three opposite facet pairs glued and one
opposite pair left open.  Inserting it at an edge ``F1 -> F2`` of the
incidence graph replaces that pairing by ``F1 -> open1`` and ``open2 -> F2``.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .cubulation import Cubulation, Pairing, orientation_characters, validate
from .cycles import FaceCycle, Transitions, crossing_numbers, cusp_count, trace_cycles
from .hypercube import Facet, SquareFace, squares_of_facet, to_ambient
from .signed_perm import SignedPerm, all_signed_perms

log = logging.getLogger(__name__)

TRANSLATION = SignedPerm((1, 2, 3))


class SurgeryError(ValueError):
    pass


class FalsificationError(RuntimeError):
    """A search that the construction guarantees to succeed came back empty."""


@dataclass(frozen=True)
class Gadget:
    body: Cubulation  # n = 1, open facets (axis, -1) and (axis, +1)
    open_axis: int
    path_profile: tuple[tuple[str, SquareFace, SquareFace], ...]  # (kind, start, end) per chain
    inner_cycles: int
    provenance: str = ""

    @property
    def open_facets(self) -> tuple[Facet, Facet]:
        return Facet(0, self.open_axis, -1), Facet(0, self.open_axis, 1)

    @property
    def glued(self) -> tuple[Pairing, ...]:
        return self.body.pairings


@dataclass(frozen=True)
class MergerCertificate:
    edge: Pairing
    squares: tuple[SquareFace, SquareFace]  # squares of the two merged cycles on the edge's source facet
    alignment: tuple[SignedPerm, SignedPerm]  # F1 -> open1, open2 -> F2
    before: int
    after: int

    def as_dict(self) -> dict:
        return {
            "move": "flower",
            "edge": str(self.edge),
            "squares": [str(q) for q in self.squares],
            "alignment": [str(m) for m in self.alignment],
            "before": self.before,
            "after": self.after,
        }


# ---------------------------------------------------------------- gadgets

def chain_profile(body: Cubulation, chains: list[FaceCycle]) -> tuple[tuple[str, SquareFace, SquareFace], ...]:
    """Classify open chains: "cross" joins the two open facets, "same" returns to one,
    "same-opposite" when the two end squares are opposite faces of that facet."""
    out = []
    for ch in chains:
        first, _ = ch.squares[0]
        last, exit_facet = ch.squares[-1]
        entry = next(f for f in first.facets if f != _exit_of(ch, 0))
        if entry != exit_facet:
            out.append(("cross", first, last))
        elif first.axes == last.axes:
            out.append(("same-opposite", first, last))
        else:
            out.append(("same", first, last))
    return tuple(out)


def _exit_of(ch: FaceCycle, i: int) -> Facet:
    return ch.squares[i][1]


def _is_merger_profile(profile) -> bool:
    kinds = [k for k, _, _ in profile]
    return len(profile) == 6 and kinds.count("cross") == 4 and kinds.count("same") == 2


def _gadget_body(open_axis: int, maps) -> Cubulation:
    glued = [a for a in range(1, 5) if a != open_axis]
    pairings = [Pairing(Facet(0, a, -1), Facet(0, a, 1), m) for a, m in zip(glued, maps)]
    return Cubulation.build(1, pairings, [Facet(0, open_axis, -1), Facet(0, open_axis, 1)])


def _reversing(a: int) -> tuple[SignedPerm, ...]:
    src, tgt = Facet(0, a, -1), Facet(0, a, 1)
    return tuple(m for m in all_signed_perms(3) if to_ambient(src, tgt, m).det() == -1)


def iter_merger_gadgets(open_axis: int = 1):
    """All merger gadgets with the given open axis, in lexicographic order of the glued maps.

    The search space is 24^3 = 13824 orientation-reversing assignments.
    """
    glued = [a for a in range(1, 5) if a != open_axis]
    for k, maps in enumerate(itertools.product(*(_reversing(a) for a in glued))):
        body = _gadget_body(open_axis, maps)
        cycles = trace_cycles(body)
        if any(cy.closed for cy in cycles):
            continue
        profile = chain_profile(body, cycles)
        if _is_merger_profile(profile):
            yield Gadget(body, open_axis, profile, 0, f"merger search, open axis {open_axis}, candidate {k} of 13824")


@lru_cache(maxsize=None)
def find_merger_gadget() -> Gadget:
    for axis in (1, 2, 3, 4):
        g = next(iter_merger_gadgets(axis), None)
        if g is not None:
            log.info("merger gadget: %s", g.provenance)
            return g
    raise FalsificationError("no one-hypercube partial cubulation with the merger chain profile")


@lru_cache(maxsize=None)
def splitter_gadget(open_axis: int = 1) -> Gadget:
    """The hypercube with three opposite pairs glued by translations and one pair open."""
    body = _gadget_body(open_axis, [TRANSLATION] * 3)
    cycles = trace_cycles(body)
    chains = [cy for cy in cycles if not cy.closed]
    inner = sum(cy.closed for cy in cycles)
    return Gadget(body, open_axis, chain_profile(body, chains), inner, "three translations, one open pair")


# ---------------------------------------------------------------- insertion

def resolve_edge(c: Cubulation, edge) -> Pairing:
    if isinstance(edge, int):
        if not 0 <= edge < len(c.pairings):
            raise SurgeryError(f"edge index {edge} out of range 0..{len(c.pairings) - 1}")
        return c.pairings[edge]
    edge = Pairing(*edge)
    if c.partner.get(edge.source) != edge:
        raise SurgeryError(f"{edge} is not a pairing of the cubulation")
    return edge


def alignment_maps(c: Cubulation, edge: Pairing, gadget: Gadget) -> tuple[list[SignedPerm], list[SignedPerm]]:
    """Maps F1 -> open1 and open2 -> F2 keeping the result orientable (gadget cube oriented +1)."""
    o = orientation_characters(c)
    if o is None:
        raise SurgeryError("cubulation is not orientable")
    open1, open2 = gadget.open_facets
    f1, f2 = edge.source, edge.target
    alphas = [m for m in all_signed_perms(3) if to_ambient(f1, open1, m).det() == -o[f1.cube]]
    betas = [m for m in all_signed_perms(3) if to_ambient(open2, f2, m).det() == -o[f2.cube]]
    return alphas, betas


def insert_gadget(c: Cubulation, edge: Pairing, gadget: Gadget, alpha: SignedPerm, beta: SignedPerm):
    """Insert ``gadget`` as a new last hypercube at ``edge``; returns (cubulation, new outgoing edge)."""
    n = c.n
    open1, open2 = (f._replace(cube=n) for f in gadget.open_facets)
    pairings = [p for p in c.pairings if p != edge.normalized()]
    for p in gadget.glued:
        pairings.append(Pairing(p.source._replace(cube=n), p.target._replace(cube=n), p.map))
    pairings.append(Pairing(edge.source, open1, alpha))
    out_edge = Pairing(open2, edge.target, beta)
    pairings.append(out_edge)
    return Cubulation.build(n + 1, pairings, c.open_facets), out_edge


def _labels(c: Cubulation, tr: Optional[Transitions] = None) -> dict[SquareFace, int]:
    return {sq: i for i, cy in enumerate(trace_cycles(c, tr)) for sq, _ in cy.squares}


def _merge_edge_squares(c: Cubulation, edge: Pairing, labels) -> Optional[tuple[SquareFace, SquareFace]]:
    """First pair of non-opposite squares of the source facet lying on distinct cycles."""
    sqs = squares_of_facet(edge.source)
    for a, b in itertools.combinations(sqs, 2):
        if a.axes != b.axes and labels[a] != labels[b]:
            return a, b
    return None


def _merged_pair(old: dict, new: dict) -> Optional[tuple[int, int]]:
    """If the new partition of the old squares is the old one with exactly two blocks merged,
    return those two old block labels."""
    blocks: dict[int, set[int]] = {}
    for sq, lab in old.items():
        blocks.setdefault(new[sq], set()).add(lab)
    sizes = sorted(len(b) for b in blocks.values())
    n_old = len(set(old.values()))
    if len(blocks) != n_old - 1 or sizes[-1] != 2:
        return None
    if len(set().union(*blocks.values())) != n_old:
        return None
    merged = next(b for b in blocks.values() if len(b) == 2)
    return tuple(sorted(merged))  # type: ignore[return-value]


def insert_flower(c: Cubulation, edge=None, gadget: Gadget | None = None) -> tuple[Cubulation, MergerCertificate]:
    """Merge two cycles of squares into one by inserting a merger gadget at an edge.

    Alignments are tried in lexicographic order of (F1 -> open1, open2 -> F2) and
    the first one leaving k - 1 cycles, with the old squares partitioned as
    before except for the two merged cycles, is kept.
    """
    if not c.complete:
        raise SurgeryError("flower insertion needs a complete cubulation")
    gadget = gadget or find_merger_gadget()
    old_cycles = trace_cycles(c)
    k = len(old_cycles)
    if k <= 1:
        raise SurgeryError(f"flower insertion needs at least two cycles, found {k}")
    labels = {sq: i for i, cy in enumerate(old_cycles) for sq, _ in cy.squares}
    old_classes = [cy.monodromy_class for cy in old_cycles]
    if edge is None:
        candidates = [p for p in c.pairings if _merge_edge_squares(c, p, labels)]
        if not candidates:
            raise FalsificationError("no edge is traversed by two distinct cycles through non-opposite squares")
    else:
        e = resolve_edge(c, edge)
        if _merge_edge_squares(c, e, labels) is None:
            raise SurgeryError(f"edge {e} is not traversed by two cycles through non-opposite squares")
        candidates = [e]
    for e in candidates:
        alphas, betas = alignment_maps(c, e, gadget)
        for alpha, beta in itertools.product(alphas, betas):
            new, _ = insert_gadget(c, e, gadget, alpha, beta)
            if cusp_count(new) != k - 1:
                continue
            new_cycles = trace_cycles(new)
            new_labels = {sq: i for i, cy in enumerate(new_cycles) for sq, _ in cy.squares}
            merged = _merged_pair(labels, new_labels)
            if merged is None:
                continue
            # the untouched cycles keep their monodromy class
            ok = all(
                new_cycles[new_labels[old_cycles[i].squares[0][0]]].monodromy_class == old_classes[i]
                for i in range(k)
                if i not in merged
            )
            if not ok:
                continue
            on_facet = {labels[q]: q for q in reversed(squares_of_facet(e.source))}
            squares = (on_facet.get(merged[0]), on_facet.get(merged[1]))
            cert = MergerCertificate(e, squares, (alpha, beta), k, k - 1)  # type: ignore[arg-type]
            return new, cert
        if edge is not None:
            break
    raise FalsificationError("no alignment of the merger gadget reduces the cycle count by one")


def insert_splitter(c: Cubulation, edge=None, count: int = 1) -> Cubulation:
    """Insert ``count`` splitter gadgets in series at ``edge`` (default: the first pairing)."""
    return insert_splitter_logged(c, edge, count)[0]


def insert_splitter_logged(c: Cubulation, edge=None, count: int = 1) -> tuple[Cubulation, list[dict]]:
    if count < 0:
        raise SurgeryError("count must be non-negative")
    if not c.complete:
        raise SurgeryError("splitter insertion needs a complete cubulation")
    if count == 0:
        return c, []
    gadget = splitter_gadget()
    e = c.pairings[0] if edge is None else resolve_edge(c, edge)
    log_rows = []
    k = cusp_count(c)
    for _ in range(count):
        alphas, betas = alignment_maps(c, e, gadget)
        at = e
        c, e = insert_gadget(c, e, gadget, alphas[0], betas[0])
        k_new = cusp_count(c)
        log_rows.append({"move": "split", "edge": str(at), "before": k, "after": k_new})
        k = k_new
    return c, log_rows


def reduce_to_k(c: Cubulation, k: int, gadget: Gadget | None = None) -> tuple[Cubulation, list[dict]]:
    """Splitters until at least ``k`` cycles, then flowers down to exactly ``k``."""
    if k < 1:
        raise SurgeryError("target cycle count must be positive")
    moves: list[dict] = []
    while cusp_count(c) < k:
        c, rows = insert_splitter_logged(c, None, 1)
        moves += rows
    while cusp_count(c) > k:
        c, cert = insert_flower(c, None, gadget)
        moves.append(cert.as_dict())
    return c, moves


# ---------------------------------------------------------------- covers

def default_unroll_edge(c: Cubulation) -> Pairing:
    """First pairing crossed zero times (signed) by every cycle, else the first pairing.

    Along such an edge each cycle lifts to n disjoint copies of itself.
    """
    cycles = [cy for cy in trace_cycles(c) if cy.closed]
    totals = [crossing_numbers(c, cy) for cy in cycles]
    for j, p in enumerate(c.pairings):
        if all(t[j] == 0 for t in totals):
            return p
    return c.pairings[0]


def cyclic_unroll(c: Cubulation, edge=None, n: int = 2) -> Cubulation:
    """n-fold cyclic cover: copy i's pairing at ``edge`` is rethreaded into copy i+1 (mod n)."""
    if n < 1:
        raise SurgeryError("cover degree must be positive")
    e = default_unroll_edge(c) if edge is None else resolve_edge(c, edge)
    if n == 1:
        return c
    m = c.n
    pairings = []
    for i in range(n):
        def lift(f: Facet, copy: int = i) -> Facet:
            return f._replace(cube=copy * m + f.cube)

        for p in c.pairings:
            if p == e.normalized():
                # keep the orientation of the designated edge
                pairings.append(Pairing(lift(e.source), lift(e.target, (i + 1) % n), e.map))
            else:
                pairings.append(Pairing(lift(p.source), lift(p.target), p.map))
    out = Cubulation.build(n * m, pairings, [f._replace(cube=i * m + f.cube) for i in range(n) for f in c.open_facets])
    problems = [d for d in validate(out) if not d.startswith("unmatched")]
    if problems:
        raise SurgeryError("; ".join(problems))
    return out
