"""Cycles of square faces, frame transport, monodromy and cusp invariants."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .cubulation import Cubulation, is_orientable
from .hypercube import (
    LOCAL_SQUARES,
    SQUARE_INDEX,
    Facet,
    SquareFace,
    square_from_local,
)
from .signed_perm import SignedPerm, all_signed_perms, perm_index

MONODROMY_CLASSES = ("I", "-I", "R4", "reflection-axis", "reflection-diagonal")
ORIENTATION_PRESERVING = ("I", "-I", "R4")


@lru_cache(maxsize=None)
def _b4_tables():
    """Per element of the hyperoctahedral group: action on signed axes and local squares.

    axis_act[g][t + 4] is the image of signed axis t; square_act[g][q] is the
    image of local square q.
    """
    group = all_signed_perms(4)
    axis_act, square_act = [], []
    for g in group:
        row = [0] * 9
        for t in (-4, -3, -2, -1, 1, 2, 3, 4):
            row[t + 4] = g(t)
        axis_act.append(row)
        sq = []
        for (a, b), (sa, sb) in LOCAL_SQUARES:
            ia, ib = g(sa * a), g(sb * b)
            pa, pb = abs(ia), abs(ib)
            ta, tb = (1 if ia > 0 else -1), (1 if ib > 0 else -1)
            if pa > pb:
                pa, ta, pb, tb = pb, tb, pa, ta
            sq.append(SQUARE_INDEX[((pa, pb), (ta, tb))])
        square_act.append(sq)
    return axis_act, square_act


# port of a local square: 0 exits through its first facet (lower axis), 1 through the second
def _square_port_facet_local(q: int, port: int) -> int:
    (a, b), (sa, sb) = LOCAL_SQUARES[q]
    axis, sign = (a, sa) if port == 0 else (b, sb)
    return 2 * (axis - 1) + (sign > 0)


@lru_cache(maxsize=None)
def _port_of():
    """(local square, local facet) -> port, for facets containing the square."""
    table = {}
    for q in range(24):
        for port in (0, 1):
            table[(q, _square_port_facet_local(q, port))] = port
    return table


class Transitions:
    """State machine on (square, exit port) pairs of a cubulation.

    State ``2 * (24 * cube + q) + port``.  ``nxt[s]`` is the next state (or -1
    when the exit facet is open) and ``gid[s]`` the index of the ambient map
    carrying frames across.
    """

    def __init__(self, c: Cubulation):
        _, square_act = _b4_tables()
        index = perm_index(4)
        port_of = _port_of()
        size = 48 * c.n
        self.n = c.n
        self.nxt = [-1] * size
        self.gid = [-1] * size
        for f, p in c.partner.items():
            g = index[p.ambient]
            fl = f.local
            tl = p.target.local
            for q in range(24):
                port = port_of.get((q, fl))
                if port is None:
                    continue
                q2 = square_act[g][q]
                # entered through target facet; leave through the other one
                exit_port = 1 - port_of[(q2, tl)]
                s = 2 * (24 * f.cube + q) + port
                self.nxt[s] = 2 * (24 * p.target.cube + q2) + exit_port
                self.gid[s] = g


def _state_square(s: int) -> SquareFace:
    sq = s // 2
    return square_from_local(sq // 24, sq % 24)


def _state_exit(s: int) -> Facet:
    sq = s // 2
    f = _square_port_facet_local(sq % 24, s % 2)
    return Facet(sq // 24, f // 2 + 1, 1 if f % 2 else -1)


def _tangent(s: int) -> tuple[int, int]:
    return square_from_local(0, (s // 2) % 24).tangent_axes


@dataclass(frozen=True)
class FaceCycle:
    squares: tuple[tuple[SquareFace, Facet], ...]
    closed: bool
    monodromy: Optional[SignedPerm] = None
    states: tuple[int, ...] = ()

    @property
    def length(self) -> int:
        return len(self.squares)

    h = length

    @property
    def monodromy_class(self) -> Optional[str]:
        return None if self.monodromy is None else monodromy_class(self.monodromy)


def _monodromy_from_frame(start: int, w1: int, w2: int) -> SignedPerm:
    c, d = _tangent(start)

    def coord(w):
        k = 1 if abs(w) == c else 2
        return k if w > 0 else -k

    return SignedPerm((coord(w1), coord(w2)))


def transport(tr: Transitions, start: int) -> tuple[list[int], Optional[tuple[int, int]]]:
    """Follow states from ``start``; returns the visited states and the final frame.

    The frame starts as the positive tangent axes of the start square.  The
    final frame is None when the walk runs into an open facet.
    """
    axis_act, _ = _b4_tables()
    w1, w2 = _tangent(start)
    states = []
    s = start
    while True:
        states.append(s)
        g = tr.gid[s]
        if g < 0:
            return states, None
        act = axis_act[g]
        w1, w2 = act[w1 + 4], act[w2 + 4]
        s = tr.nxt[s]
        if s == start:
            return states, (w1, w2)


def monodromy_at(tr: Transitions, start: int) -> SignedPerm:
    states, frame = transport(tr, start)
    if frame is None:
        raise ValueError("state lies on an open chain")
    return _monodromy_from_frame(start, *frame)


def _make_cycle(states, closed, monodromy=None) -> FaceCycle:
    return FaceCycle(
        tuple((_state_square(s), _state_exit(s)) for s in states),
        closed,
        monodromy,
        tuple(states),
    )


def trace_cycles(c: Cubulation, tr: Transitions | None = None) -> list[FaceCycle]:
    """Partition the 24n squares into closed cycles (and open chains if partial).

    Open chains are listed first, then cycles; both in order of their first square.
    """
    tr = tr or Transitions(c)
    size = 48 * c.n
    seen = [False] * (size // 2)
    out: list[FaceCycle] = []
    if c.open_facets:
        # a chain starts at a state whose entry port is open
        prev = [-1] * size
        for s, t in enumerate(tr.nxt):
            if t >= 0:
                prev[t] = s
        for s in range(size):
            if prev[s] >= 0 or seen[s // 2]:
                continue
            # entry facet of state s is the other port; if it is open, s starts a chain
            if tr.nxt[s ^ 1] >= 0:
                continue
            states, _ = transport(tr, s)
            for x in states:
                seen[x // 2] = True
            out.append(_make_cycle(states, closed=False))
    for sq in range(size // 2):
        if seen[sq]:
            continue
        start = 2 * sq
        states, frame = transport(tr, start)
        for x in states:
            seen[x // 2] = True
        out.append(_make_cycle(states, True, _monodromy_from_frame(start, *frame)))
    return out


def monodromy_class(m: SignedPerm) -> str:
    """Conjugacy class of a symmetry of the square, given as a degree-2 signed permutation."""
    (x, y) = m.images
    swapped = abs(x) == 2
    same_sign = (x > 0) == (y > 0)
    if not swapped:
        if same_sign:
            return "I" if x > 0 else "-I"
        return "reflection-axis"
    return "reflection-diagonal" if same_sign else "R4"


def section_shape(h: int, cls: str) -> str:
    if cls == "I":
        return f"3-torus 2x2x{h}"
    if cls in ("-I", "R4"):
        return f"torus-bundle[{cls}] h={h}"
    raise ValueError(f"no flat section shape for monodromy class {cls}")


@dataclass(frozen=True)
class CuspReport:
    cycle: FaceCycle
    h: int
    monodromy_class: str
    shape: Optional[str]
    section_volume: int

    @property
    def sides(self) -> tuple[int, int, int]:
        return (2, 2, self.h)


def classify_cusp(cycle: FaceCycle, orientable: bool = True) -> CuspReport:
    if not cycle.closed:
        raise ValueError("cannot classify an open chain")
    cls = monodromy_class(cycle.monodromy)
    shape = section_shape(cycle.length, cls) if orientable and cls in ORIENTATION_PRESERVING else None
    return CuspReport(cycle, cycle.length, cls, shape, 4 * cycle.length)


@dataclass(frozen=True)
class InvariantReport:
    n: int
    k: int
    chi: int
    volume_coefficient: Fraction  # Vol = volume_coefficient * pi^2
    total_section_volume: int
    orientable: bool
    cusps: tuple[CuspReport, ...]

    @property
    def volume(self) -> float:
        return float(self.volume_coefficient) * math.pi ** 2

    @property
    def profile(self) -> tuple[tuple[int, str], ...]:
        return tuple(sorted((c.h, c.monodromy_class) for c in self.cusps))

    def volume_text(self) -> str:
        q = self.volume_coefficient
        frac = f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)
        return f"{frac}*pi^2 = {self.volume:.10f}"


def volume_coefficient(n: int) -> Fraction:
    """Vol(M) / pi^2 = (4/3) * chi, chi = 4n."""
    return Fraction(4, 3) * euler_characteristic(n)


def euler_characteristic(n: int) -> int:
    return 4 * n


def invariant_report(c: Cubulation) -> InvariantReport:
    if not c.complete:
        raise ValueError("invariant report needs a complete cubulation")
    orientable = is_orientable(c)
    cusps = tuple(classify_cusp(cy, orientable) for cy in trace_cycles(c))
    return InvariantReport(
        n=c.n,
        k=len(cusps),
        chi=euler_characteristic(c.n),
        volume_coefficient=volume_coefficient(c.n),
        total_section_volume=sum(cu.section_volume for cu in cusps),
        orientable=orientable,
        cusps=cusps,
    )


def cusp_count(c: Cubulation) -> int:
    """Number of closed cycles (cheap: no frames, no report)."""
    tr = Transitions(c)
    seen = [False] * (24 * c.n)
    k = 0
    for sq in range(24 * c.n):
        if seen[sq]:
            continue
        s = 2 * sq
        closed = True
        while True:
            seen[s // 2] = True
            s = tr.nxt[s]
            if s < 0:
                closed = False
                break
            if s == 2 * sq:
                break
        k += closed
    return k


def square_cycle_labels(c: Cubulation) -> dict[SquareFace, int]:
    """Square -> index of the cycle (or chain) it belongs to, in trace order."""
    return {sq: i for i, cy in enumerate(trace_cycles(c)) for sq, _ in cy.squares}


def crossing_numbers(c: Cubulation, cycle: FaceCycle) -> list[int]:
    """Signed count of how often ``cycle`` crosses each pairing (source -> target positive)."""
    counts = [0] * len(c.pairings)
    index = {p: k for k, p in enumerate(c.pairings)}
    for _, exit_facet in cycle.squares:
        p = c.partner[exit_facet]
        if p in index:
            counts[index[p]] += 1
        else:
            counts[index[p.reversed()]] -= 1
    return counts
