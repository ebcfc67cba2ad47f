"""Cubulations: n hypercubes with an isometric pairing of their facets.

File format (UTF-8, line oriented, ``#`` starts a comment)::

    cubes <n>
    pair <i>.<±a> <j>.<±b> <m1> <m2> <m3>
    open <i>.<±a>

The canonical serialization writes ``cubes`` first, then the ``pair`` lines
sorted by source facet, then the ``open`` lines sorted.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

from .hypercube import Facet, facet_from_local, facet_orientation_sign, to_ambient
from .signed_perm import SignedPerm, invert


class CubulationError(ValueError):
    """Raised for malformed cubulation input; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class Pairing(NamedTuple):
    source: Facet
    target: Facet
    map: SignedPerm

    def normalized(self) -> "Pairing":
        if self.target < self.source:
            return self.reversed()
        return self

    def reversed(self) -> "Pairing":
        return Pairing(self.target, self.source, invert(self.map))

    @property
    def ambient(self) -> SignedPerm:
        return to_ambient(self.source, self.target, self.map)

    def reverses_orientation(self) -> bool:
        return self.map.det() * facet_orientation_sign(self.source) * facet_orientation_sign(self.target) == -1

    def __str__(self) -> str:
        return f"pair {self.source} {self.target} {self.map}"


@dataclass(frozen=True)
class Cubulation:
    n: int
    pairings: tuple[Pairing, ...]
    open_facets: tuple[Facet, ...] = ()

    @classmethod
    def build(cls, n: int, pairings: Iterable, open_facets: Iterable[Facet] = ()) -> "Cubulation":
        ps = []
        for p in pairings:
            p = Pairing(*p)
            if p.source == p.target:
                raise CubulationError(f"facet {p.source} paired with itself")
            ps.append(p.normalized())
        ps.sort()
        return cls(n, tuple(ps), tuple(sorted(open_facets)))

    @property
    def complete(self) -> bool:
        return not self.open_facets

    @cached_property
    def partner(self) -> dict[Facet, Pairing]:
        """Facet -> pairing directed out of that facet."""
        out: dict[Facet, Pairing] = {}
        for p in self.pairings:
            out[p.source] = p
            out[p.target] = p.reversed()
        return out

    def facets(self) -> list[Facet]:
        return [facet_from_local(i, k) for i in range(self.n) for k in range(8)]

    def serialize(self) -> str:
        lines = [f"cubes {self.n}"]
        lines += [str(p) for p in self.pairings]
        lines += [f"open {f}" for f in self.open_facets]
        return "\n".join(lines) + "\n"

    def __str__(self) -> str:
        return self.serialize()


def parse(text: str, allow_disconnected: bool = False, check: bool = True) -> Cubulation:
    n = None
    pairings: list[Pairing] = []
    open_facets: list[Facet] = []
    seen: dict[Facet, int] = {}

    def claim(f: Facet, lineno: int) -> None:
        if n is not None and not 0 <= f.cube < n:
            raise CubulationError(f"facet {f} out of range for {n} cubes", lineno)
        if f in seen:
            raise CubulationError(f"duplicate facet {f} (first used on line {seen[f]})", lineno)
        seen[f] = lineno

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        try:
            if words[0] == "cubes":
                if n is not None or len(words) != 2:
                    raise CubulationError("'cubes' must appear once with one argument", lineno)
                n = int(words[1])
                if n < 1:
                    raise CubulationError("need at least one cube", lineno)
            elif n is None:
                raise CubulationError("'cubes <n>' must come first", lineno)
            elif words[0] == "pair":
                if len(words) != 6:
                    raise CubulationError("'pair' takes two facets and three map entries", lineno)
                src, tgt = Facet.parse(words[1]), Facet.parse(words[2])
                m = SignedPerm.parse(words[3:])
                if m.degree != 3:
                    raise CubulationError("pairing map must have degree 3", lineno)
                claim(src, lineno)
                claim(tgt, lineno)
                pairings.append(Pairing(src, tgt, m).normalized())
            elif words[0] == "open":
                if len(words) != 2:
                    raise CubulationError("'open' takes one facet", lineno)
                f = Facet.parse(words[1])
                claim(f, lineno)
                open_facets.append(f)
            else:
                raise CubulationError(f"unknown keyword {words[0]!r}", lineno)
        except CubulationError:
            raise
        except ValueError as exc:
            raise CubulationError(str(exc), lineno) from None
    if n is None:
        raise CubulationError("syntax error: missing 'cubes <n>' line", 1)
    c = Cubulation.build(n, pairings, open_facets)
    if check:
        problems = validate(c, require_connected=not allow_disconnected)
        if problems:
            raise CubulationError("; ".join(problems))
    return c


def serialize(c: Cubulation) -> str:
    return c.serialize()


def load(path, **kw) -> Cubulation:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read(), **kw)


def save(c: Cubulation, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(c.serialize())


def validate(c: Cubulation, require_connected: bool = True) -> list[str]:
    """Structural diagnostics; an empty list means the facet partition is sound."""
    problems = []
    counts: dict[Facet, int] = {}
    for p in c.pairings:
        if p.map.degree != 3 or sorted(map(abs, p.map.images)) != [1, 2, 3]:
            problems.append(f"bad map on {p}")
        for f in (p.source, p.target):
            counts[f] = counts.get(f, 0) + 1
    for f in c.open_facets:
        counts[f] = counts.get(f, 0) + 1
    for f, k in sorted(counts.items()):
        if not 0 <= f.cube < c.n:
            problems.append(f"facet {f} out of range")
        elif k > 1:
            problems.append(f"duplicate facet {f}")
    for f in c.facets():
        if f not in counts:
            problems.append(f"unmatched facet {f}")
    if require_connected and not problems and len(components(c)) > 1:
        problems.append("disconnected incidence graph")
    return problems


def components(c: Cubulation) -> list[list[int]]:
    parent = list(range(c.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in c.pairings:
        a, b = find(p.source.cube), find(p.target.cube)
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for i in range(c.n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def split_components(c: Cubulation) -> list[Cubulation]:
    out = []
    for cubes in components(c):
        index = {old: new for new, old in enumerate(cubes)}

        def move(f: Facet) -> Facet:
            return Facet(index[f.cube], f.axis, f.sign)

        pairings = [Pairing(move(p.source), move(p.target), p.map) for p in c.pairings if p.source.cube in index]
        opens = [move(f) for f in c.open_facets if f.cube in index]
        out.append(Cubulation.build(len(cubes), pairings, opens))
    return out


def orientation_characters(c: Cubulation) -> list[int] | None:
    """Per-cube signs ``o_i`` making every pairing orientation-reversing, or None.

    A pairing between cubes ``i`` and ``j`` reverses orientation (for the
    orientations ``o_i``, ``o_j``) iff ``det(G) * o_i * o_j == -1`` where ``G``
    is its ambient form.
    """
    o: list[int | None] = [None] * c.n
    adj: dict[int, list[tuple[int, int]]] = {i: [] for i in range(c.n)}
    for p in c.pairings:
        d = p.ambient.det()
        adj[p.source.cube].append((p.target.cube, d))
        adj[p.target.cube].append((p.source.cube, d))
    for root in range(c.n):
        if o[root] is not None:
            continue
        o[root] = 1
        stack = [root]
        while stack:
            i = stack.pop()
            for j, d in adj[i]:
                want = -d * o[i]
                if o[j] is None:
                    o[j] = want
                    stack.append(j)
                elif o[j] != want:
                    return None
    return o  # type: ignore[return-value]


def is_orientable(c: Cubulation) -> bool:
    """True iff the hypercubes can be oriented so that every pairing reverses orientation.

    With the standard orientation on every cube this is the per-pairing test
    ``det(map) * eps(source) * eps(target) == -1``; cubes may also be flipped,
    which makes the answer invariant under relabeling (the two-cube double of
    the hypercube glued by identities is orientable, as it should be).
    """
    return orientation_characters(c) is not None


def is_strictly_orientable(c: Cubulation) -> bool:
    """Every pairing reverses orientation for the standard orientation of each cube."""
    return all(p.reverses_orientation() for p in c.pairings)


class IncidenceGraph(NamedTuple):
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int, Pairing], ...]

    def degree(self, v: int) -> int:
        return sum((a == v) + (b == v) for a, b, _ in self.edges)


def incidence_graph(c: Cubulation) -> IncidenceGraph:
    return IncidenceGraph(
        tuple(range(c.n)),
        tuple((p.source.cube, p.target.cube, p) for p in c.pairings),
    )


def facet_slots(c: Cubulation, cube: int) -> int:
    """Facet slots of ``cube`` used by pairings and open facets (8 for a valid input)."""
    g = incidence_graph(c)
    return g.degree(cube) + sum(f.cube == cube for f in c.open_facets)


def to_networkx(c: Cubulation):
    import networkx as nx

    g = nx.MultiGraph()
    g.add_nodes_from(range(c.n))
    for k, p in enumerate(c.pairings):
        g.add_edge(p.source.cube, p.target.cube, key=k, pairing=str(p))
    return g


def to_dot(c: Cubulation, name: str = "cubulation") -> str:
    lines = [f"graph {name} {{"]
    for i in range(c.n):
        lines.append(f'  {i} [label="H{i}"];')
    for k, p in enumerate(c.pairings):
        lines.append(f'  {p.source.cube} -- {p.target.cube} [label="e{k}: {p.source}>{p.target} ({p.map})"];')
    for f in c.open_facets:
        lines.append(f'  open_{f.cube}_{f.local} [shape=point]; {f.cube} -- open_{f.cube}_{f.local} [style=dashed, label="{f}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def random_cubulation(rng, n: int, orientable: bool | None = None, connected: bool = True) -> Cubulation:
    """Uniform random matching of the 8n facets with random maps.

    With ``orientable=True`` each cube gets a random orientation sign and
    every map is drawn among those reversing orientation for those signs.
    Rejection sampling enforces connectivity when asked.
    """
    from .signed_perm import all_signed_perms

    maps = all_signed_perms(3)
    while True:
        facets = [facet_from_local(i, k) for i in range(n) for k in range(8)]
        rng.shuffle(facets)
        o = [rng.choice((-1, 1)) for _ in range(n)]
        pairings = []
        for a, b in zip(facets[::2], facets[1::2]):
            if orientable:
                choices = [m for m in maps if to_ambient(a, b, m).det() == -o[a.cube] * o[b.cube]]
                m = rng.choice(choices)
            else:
                m = rng.choice(maps)
            pairings.append(Pairing(a, b, m))
        c = Cubulation.build(n, pairings)
        if not connected or len(components(c)) == 1:
            return c
