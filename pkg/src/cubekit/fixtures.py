"""Frozen example cubulations shipped with the package.

Examples 1 and 2 are written down directly.  The one-cusp seed and the two
two-cusp examples are the first hits of the exhaustive one-hypercube search
(see census.find_one_cusp_seed / find_two_cusp_examples); the files record
that provenance and the tests check the search still reproduces them.
"""
from __future__ import annotations

from importlib import resources
from pathlib import Path

from .cubulation import Cubulation, Pairing, parse
from .hypercube import Facet
from .signed_perm import SignedPerm

FIXTURES = ("example1", "example2", "seed", "two_cusp_K", "two_cusp_L")

IDENTITY = SignedPerm((1, 2, 3))


def example1() -> Cubulation:
    """One hypercube, each facet glued to its opposite by a translation."""
    return Cubulation.build(1, [Pairing(Facet(0, a, -1), Facet(0, a, 1), IDENTITY) for a in range(1, 5)])


def example2() -> Cubulation:
    """Two hypercubes, each facet glued to the same facet of the other cube by the identity."""
    return Cubulation.build(
        2, [Pairing(Facet(0, a, s), Facet(1, a, s), IDENTITY) for a in range(1, 5) for s in (-1, 1)]
    )


def fixture_text(name: str) -> str:
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")
    return resources.files("cubekit.data").joinpath(f"{name}.cub").read_text(encoding="utf-8")


def load_fixture(name: str) -> Cubulation:
    return parse(fixture_text(name))


def seed() -> Cubulation:
    return load_fixture("seed")


def two_cusp_examples() -> tuple[Cubulation, Cubulation]:
    return load_fixture("two_cusp_K"), load_fixture("two_cusp_L")


def write_fixtures(directory) -> list[Path]:
    """Copy every fixture file into ``directory``; returns the written paths."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    out = []
    for name in FIXTURES:
        path = directory / f"{name}.cub"
        path.write_text(fixture_text(name), encoding="utf-8", newline="\n")
        out.append(path)
    return out
