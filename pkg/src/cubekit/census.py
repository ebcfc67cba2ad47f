"""Exhaustive search over small cubulations, up to combinatorial equivalence.

Single-hypercube cubulations are handled by a vectorised engine: matchings
of the 8 facets are reduced to one representative per hyperoctahedral orbit,
then every map assignment for that matching is evaluated at once with numpy
(cycle counts by pointer doubling on the 48 square/port states).  Survivors
of the cusp-count filter are reduced to orbit representatives under the
stabiliser of the matching and only those are traced in full.

Larger ``n`` uses a plain backtracking enumerator with a candidate budget.
"""
from __future__ import annotations

import builtins
import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional

import numpy as np

from .canonical import BudgetExceeded, CanonicalForm, b4_algebra, canonical_form, from_compact
from .cubulation import Cubulation, Pairing, components
from .cycles import _b4_tables, _port_of, invariant_report
from .hypercube import facet_from_local, to_ambient, to_intrinsic
from .signed_perm import all_signed_perms, invert, perm_index

log = logging.getLogger(__name__)

CENSUS_HEADER = "#cubekit-census v1"
CENSUS_COLUMNS = "canonical_form\tn\torientable\tcusp_profile"


class FalsificationError(RuntimeError):
    """A configuration promised to exist was not found by exhaustive search."""


@dataclass(frozen=True)
class SearchSpec:
    n: int = 1
    orientable_only: bool = True
    matching_pattern: Optional[str] = None  # None or "opposite"
    cusp_count: Optional[int] = None
    monodromy_profile: Optional[tuple[str, ...]] = None  # multiset of classes
    limit: Optional[int] = None
    budget: int = 10**7
    jobs: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.matching_pattern not in (None, "opposite"):
            raise ValueError(f"unknown matching pattern {self.matching_pattern!r}")
        if self.monodromy_profile is not None:
            object.__setattr__(self, "monodromy_profile", tuple(sorted(self.monodromy_profile)))


@dataclass(frozen=True)
class CensusEntry:
    canonical: str  # compact canonical form: pair lines joined by ';'
    n: int
    orientable: bool
    cusp_profile: tuple[tuple[int, str], ...]

    def cubulation(self) -> Cubulation:
        return from_compact(self.n, self.canonical)

    def row(self) -> str:
        prof = ",".join(f"{h}:{cls}" for h, cls in self.cusp_profile)
        return f"{self.canonical}\t{self.n}\t{'true' if self.orientable else 'false'}\t{prof}"


def accepts(spec: SearchSpec, profile, orientable: bool) -> bool:
    if spec.orientable_only and not orientable:
        return False
    if spec.cusp_count is not None and len(profile) != spec.cusp_count:
        return False
    if spec.monodromy_profile is not None:
        if tuple(sorted(cls for _, cls in profile)) != spec.monodromy_profile:
            return False
    return True


def make_entry(c: Cubulation, form: CanonicalForm | None = None) -> CensusEntry:
    rep = invariant_report(c)
    form = form or canonical_form(c)
    return CensusEntry(form.compact(), c.n, rep.orientable, rep.profile)


# ---------------------------------------------------------------- matchings

def perfect_matchings(items: list) -> Iterator[tuple]:
    """All perfect matchings of ``items``, in lexicographic order."""
    if not items:
        yield ()
        return
    a = items[0]
    for k in range(1, len(items)):
        rest = items[1:k] + items[k + 1:]
        for m in perfect_matchings(rest):
            yield ((a, items[k]),) + m


def double_factorial(m: int) -> int:
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def _act_matching(g: int, m) -> tuple:
    facet_act = b4_algebra()[3]
    return tuple(sorted(tuple(sorted((facet_act[g][x], facet_act[g][y]))) for x, y in m))


@lru_cache(maxsize=None)
def matching_orbits() -> tuple[tuple[tuple, int, tuple[int, ...]], ...]:
    """(representative, orbit size, stabiliser) for B4 acting on matchings of 8 facets."""
    reps: dict[tuple, int] = {}
    for m in perfect_matchings(list(range(8))):
        rep = min(_act_matching(g, m) for g in range(384))
        reps[rep] = reps.get(rep, 0) + 1
    out = []
    for rep in sorted(reps):
        stab = tuple(g for g in range(384) if _act_matching(g, rep) == rep)
        out.append((rep, reps[rep], stab))
    return tuple(out)


def _slot_maps(f1: int, f2: int, orientable_only: bool):
    src, tgt = facet_from_local(0, f1), facet_from_local(0, f2)
    maps = all_signed_perms(3)
    if orientable_only:
        maps = tuple(m for m in maps if to_ambient(src, tgt, m).det() == -1)
    return maps


class SingleCubeEngine:
    """Vectorised evaluation of all map assignments on one matching of 8 facets.

    An assignment is indexed big-endian by its per-pair map choices, so index
    order is lexicographic order of the choice tuple.
    """

    def __init__(self, matching, orientable_only: bool = True):
        self.matching = tuple(matching)
        self.maps = [_slot_maps(f1, f2, orientable_only) for f1, f2 in self.matching]
        self.base = len(self.maps[0])
        self.size = self.base ** 4
        index = perm_index(4)
        _, square_act = _b4_tables()
        port_of = _port_of()
        self.state_idx = []
        self.tables = []
        for (f1, f2), maps in zip(self.matching, self.maps):
            src, tgt = facet_from_local(0, f1), facet_from_local(0, f2)
            sides = [(q, f) for f in (f1, f2) for q in range(24) if (q, f) in port_of]
            rows = []
            for m in maps:
                g = to_ambient(src, tgt, m)
                fwd, back = index[g], index[invert(g)]
                row = []
                for q, f in sides:
                    h, other = (fwd, f2) if f == f1 else (back, f1)
                    q2 = square_act[h][q]
                    row.append(2 * q2 + 1 - port_of[(q2, other)])
                rows.append(row)
            self.state_idx.append(np.array([2 * q + port_of[(q, f)] for q, f in sides], dtype=np.int64))
            self.tables.append(np.array(rows, dtype=np.int64))

    def digits(self, idx: np.ndarray) -> np.ndarray:
        out = np.empty((len(idx), 4), dtype=np.int64)
        rest = np.array(idx, dtype=np.int64)
        for p in (3, 2, 1, 0):
            out[:, p] = rest % self.base
            rest //= self.base
        return out

    def cusp_counts(self, idx: np.ndarray) -> np.ndarray:
        d = self.digits(idx)
        nxt = np.empty((len(idx), 48), dtype=np.int64)
        for p in range(4):
            nxt[:, self.state_idx[p]] = self.tables[p][d[:, p]]
        lab = np.broadcast_to(np.arange(48), nxt.shape).copy()
        ptr = nxt
        # after r rounds lab[x] = min over x, P(x), ..., P^(2^r - 1)(x)
        for _ in range(6):
            lab = np.minimum(lab, np.take_along_axis(lab, ptr, 1))
            ptr = np.take_along_axis(ptr, ptr, 1)
        # every cycle of squares is two state cycles, one per direction
        return (lab == np.arange(48)).sum(1) // 2

    def cubulation(self, idx: int) -> Cubulation:
        digits = self.digits(np.array([idx]))[0]
        pairings = [
            Pairing(facet_from_local(0, f1), facet_from_local(0, f2), maps[d])
            for (f1, f2), maps, d in zip(self.matching, self.maps, digits)
        ]
        return Cubulation.build(1, pairings)

    @lru_cache(maxsize=None)
    def _orbit_tables(self, stabiliser: tuple[int, ...]):
        """Per stabiliser element, the contribution of each (pair, choice) to the image index."""
        elements, comp, inv, facet_act, _ = b4_algebra()
        index = perm_index(4)
        pos = {pair: p for p, pair in builtins.enumerate(self.matching)}
        map_pos = [{m: k for k, m in builtins.enumerate(maps)} for maps in self.maps]
        out = []
        for g in stabiliser:
            vals = np.zeros((4, self.base), dtype=np.int64)
            for p, (f1, f2) in builtins.enumerate(self.matching):
                a, b = facet_act[g][f1], facet_act[g][f2]
                lo, hi = min(a, b), max(a, b)
                q = pos[(lo, hi)]
                for k, m in builtins.enumerate(self.maps[p]):
                    G = index[to_ambient(facet_from_local(0, f1), facet_from_local(0, f2), m)]
                    NG = comp[g][comp[G][inv[g]]]
                    if a > b:
                        NG = inv[NG]
                    nm = to_intrinsic(facet_from_local(0, lo), facet_from_local(0, hi), elements[NG])
                    vals[p, k] = map_pos[q][nm] * self.base ** (3 - q)
            out.append(vals)
        return out

    def orbit_min(self, idx: np.ndarray, stabiliser: tuple[int, ...]) -> np.ndarray:
        d = self.digits(idx)
        best = np.array(idx, dtype=np.int64)
        for vals in self._orbit_tables(stabiliser):
            img = vals[0][d[:, 0]] + vals[1][d[:, 1]] + vals[2][d[:, 2]] + vals[3][d[:, 3]]
            np.minimum(best, img, out=best)
        return best


@lru_cache(maxsize=16)
def _engine(matching, orientable_only) -> SingleCubeEngine:
    return SingleCubeEngine(matching, orientable_only)


def _single_cube_matchings(spec: SearchSpec):
    for rep, _, stab in matching_orbits():
        if spec.matching_pattern == "opposite" and any(b != a + 1 or a % 2 for a, b in rep):
            continue
        yield rep, stab


def _scan_matching(args) -> list[int]:
    """Orbit-minimal assignment indices on one matching passing the cusp filter."""
    rep, stab, orientable_only, cusp_count, chunk = args
    engine = _engine(rep, orientable_only)
    found = []
    for lo in range(0, engine.size, chunk):
        idx = np.arange(lo, min(lo + chunk, engine.size), dtype=np.int64)
        if cusp_count is not None:
            idx = idx[engine.cusp_counts(idx) == cusp_count]
        if len(idx):
            mins = engine.orbit_min(idx, stab)
            found.extend(int(i) for i in idx[mins == idx])
    return found


def enumerate_cubulations(spec: SearchSpec) -> Iterator[tuple[Cubulation, CensusEntry]]:
    """One cubulation per equivalence class passing the filters, in deterministic order."""
    if spec.n == 1:
        yield from _enumerate_single(spec)
    else:
        yield from _enumerate_backtrack(spec)


def enumerate(spec: SearchSpec) -> Iterator[CensusEntry]:  # noqa: A001
    for _, entry in enumerate_cubulations(spec):
        yield entry


def _enumerate_single(spec: SearchSpec):
    job_args = [
        (rep, stab, spec.orientable_only, spec.cusp_count, 1 << 15)
        for rep, stab in _single_cube_matchings(spec)
    ]
    raw = sum(_engine(a[0], a[2]).size for a in job_args)
    if raw > spec.budget:
        raise BudgetExceeded(f"{raw} candidates exceed budget {spec.budget}")
    if spec.jobs > 1:
        from multiprocessing import Pool

        with Pool(spec.jobs) as pool:
            results = pool.map(_scan_matching, job_args)
    else:
        results = map(_scan_matching, job_args)
    emitted = 0
    for args, found in zip(job_args, results):
        engine = _engine(args[0], args[2])
        log.info("matching %s: %d classes pass the cusp filter", args[0], len(found))
        for i in found:
            c = engine.cubulation(i)
            rep = invariant_report(c)
            if not accepts(spec, rep.profile, rep.orientable):
                continue
            yield c, CensusEntry(canonical_form(c).compact(), 1, rep.orientable, rep.profile)
            emitted += 1
            if spec.limit is not None and emitted >= spec.limit:
                return


def _enumerate_backtrack(spec: SearchSpec):
    """Generic enumerator over matchings x maps, deduplicated by canonical form."""
    seen: set = set()
    count = 0
    emitted = 0
    for matching in perfect_matchings(list(range(8 * spec.n))):
        pairs = [(facet_from_local(a // 8, a % 8), facet_from_local(b // 8, b % 8)) for a, b in matching]
        if spec.matching_pattern == "opposite" and any(x.axis != y.axis or x.sign == y.sign for x, y in pairs):
            continue
        slots = [_slot_maps(a.local, b.local, spec.orientable_only) for a, b in pairs]
        first = None
        for maps in itertools.product(*slots):
            count += 1
            if count > spec.budget:
                raise BudgetExceeded(f"more than {spec.budget} candidates")
            c = Cubulation.build(spec.n, [Pairing(a, b, m) for (a, b), m in zip(pairs, maps)])
            if first is None:
                first = len(components(c)) == 1
            if not first:
                break
            rep = invariant_report(c)
            if not accepts(spec, rep.profile, rep.orientable):
                continue
            form = canonical_form(c)
            if form.key in seen:
                continue
            seen.add(form.key)
            yield c, CensusEntry(form.compact(), spec.n, rep.orientable, rep.profile)
            emitted += 1
            if spec.limit is not None and emitted >= spec.limit:
                return


def search(spec: SearchSpec) -> list[Cubulation]:
    return [c for c, _ in enumerate_cubulations(spec)]


def find_one_cusp_seed() -> Cubulation:
    spec = SearchSpec(n=1, orientable_only=True, cusp_count=1, monodromy_profile=("I",), limit=1)
    for c, _ in enumerate_cubulations(spec):
        return c
    raise FalsificationError("no orientable one-cube cubulation with a single cycle of squares")


def find_two_cusp_examples() -> tuple[Cubulation, Cubulation]:
    """(K-type with monodromies R4/R4, L-type with -I/-I), both orientable with one cube."""
    out = []
    for classes in (("R4", "R4"), ("-I", "-I")):
        spec = SearchSpec(n=1, orientable_only=True, cusp_count=2, monodromy_profile=classes, limit=1)
        found = next(enumerate_cubulations(spec), None)
        if found is None:
            raise FalsificationError(f"no orientable one-cube cubulation with profile {classes}")
        out.append(found[0])
    return out[0], out[1]


# ---------------------------------------------------------------- census files

def census_write(entries: Iterable[CensusEntry], path) -> None:
    entries = sorted(entries, key=lambda e: (e.n, e.canonical))
    keys = [(e.n, e.canonical) for e in entries]
    if len(set(keys)) != len(keys):
        raise ValueError("duplicate canonical forms in census")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(CENSUS_HEADER + "\n")
        fh.write("#" + CENSUS_COLUMNS + "\n")
        for e in entries:
            fh.write(e.row() + "\n")


def census_read(path) -> list[CensusEntry]:
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0].strip() != CENSUS_HEADER:
        raise ValueError(f"{path}: expected header {CENSUS_HEADER!r}")
    out = []
    for lineno, line in builtins.enumerate(lines[1:], start=2):
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 4:
            raise ValueError(f"{path}:{lineno}: expected 4 columns")
        prof = tuple(
            (int(h), cls) for h, cls in (item.split(":", 1) for item in cols[3].split(",") if item)
        )
        out.append(CensusEntry(cols[0], int(cols[1]), cols[2] == "true", prof))
    return out
