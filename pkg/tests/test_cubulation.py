import random

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from cubekit.canonical import random_relabeling, relabel
from cubekit.cubulation import (
    Cubulation,
    CubulationError,
    Pairing,
    components,
    facet_slots,
    incidence_graph,
    is_orientable,
    is_strictly_orientable,
    parse,
    split_components,
    to_dot,
    to_networkx,
    validate,
)
from cubekit.fixtures import example1, fixture_text
from cubekit.hypercube import Facet
from cubekit.signed_perm import SignedPerm

from conftest import cubulations

EX1 = """cubes 1
pair 0.-1 0.+1 1 2 3
pair 0.-2 0.+2 1 2 3
pair 0.-3 0.+3 1 2 3
pair 0.-4 0.+4 1 2 3
"""


def test_parse_example1():
    c = parse(EX1)
    assert c.n == 1 and len(c.pairings) == 4 and c.complete
    assert c == example1()
    assert c.serialize() == EX1


def test_parse_normalises_direction_and_order():
    text = "cubes 1\npair 0.+2 0.-2 1 2 3\npair 0.-1 0.+1 1 2 3\npair 0.+4 0.-4 2 1 3\npair 0.-3 0.+3 1 2 3\n"
    c = parse(text)
    assert [str(p.source) for p in c.pairings] == ["0.-1", "0.-2", "0.-3", "0.-4"]
    # the reversed pairing carries the inverse map
    assert c.pairings[3].map == SignedPerm((2, 1, 3))
    assert parse(c.serialize()) == c


def test_comments_and_blank_lines():
    text = "# example\n\ncubes 1  # one cube\n" + EX1.split("\n", 1)[1]
    assert parse(text) == example1()


def test_duplicate_facet_reports_line():
    text = "cubes 1\npair 0.-1 0.+1 1 2 3\npair 0.+1 0.-2 1 2 3\n"
    with pytest.raises(CubulationError, match="duplicate facet 0.\\+1") as err:
        parse(text)
    assert err.value.line == 3


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("", "missing 'cubes"),
        ("pair 0.-1 0.+1 1 2 3\n", "'cubes <n>' must come first"),
        ("cubes 1\npair 0.-1 0.+1 1 2\n", "three map entries"),
        ("cubes 1\npair 0.-1 1.+1 1 2 3\n", "out of range"),
        ("cubes 1\nglue 0.-1 0.+1 1 2 3\n", "unknown keyword"),
        ("cubes 1\npair 0.-1 0.+1 1 1 3\n", "line 2"),
        ("cubes 0\n", "at least one cube"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(CubulationError, match=fragment):
        parse(text)


def test_unmatched_facet_diagnostic():
    c = Cubulation.build(1, example1().pairings[:3])
    assert validate(c) == ["unmatched facet 0.-4", "unmatched facet 0.+4"]
    with pytest.raises(CubulationError, match="unmatched facet"):
        parse(EX1.rsplit("pair", 1)[0])


def test_disconnected_diagnostic():
    two = Cubulation.build(2, list(example1().pairings) + [
        Pairing(Facet(1, a, -1), Facet(1, a, 1), SignedPerm((1, 2, 3))) for a in range(1, 5)
    ])
    assert validate(two) == ["disconnected incidence graph"]
    with pytest.raises(CubulationError, match="disconnected"):
        parse(two.serialize())
    loaded = parse(two.serialize(), allow_disconnected=True)
    assert components(loaded) == [[0], [1]]
    assert all(part == example1() for part in split_components(loaded))


def test_partial_cubulation_round_trip():
    text = "cubes 1\npair 0.-2 0.+2 1 2 3\npair 0.-3 0.+3 1 2 3\npair 0.-4 0.+4 1 2 3\nopen 0.-1\nopen 0.+1\n"
    c = parse(text)
    assert not c.complete and c.serialize() == text and validate(c) == []


def test_orientability_examples(ex1, ex2):
    assert is_orientable(ex1) and is_strictly_orientable(ex1)
    # the double of the hypercube is orientable once the second cube is flipped
    assert is_orientable(ex2) and not is_strictly_orientable(ex2)
    flipped = list(ex1.pairings)
    flipped[0] = flipped[0]._replace(map=SignedPerm((-1, 2, 3)))
    assert not is_orientable(Cubulation.build(1, flipped))


@given(cubulations(), st.integers(0, 2**32 - 1))
def test_orientability_is_relabeling_invariant(c, s):
    perm, isos = random_relabeling(c.n, random.Random(s))
    assert is_orientable(relabel(c, perm, isos)) == is_orientable(c)


@given(cubulations(orientable=True))
def test_orientable_sampler(c):
    assert is_orientable(c) and validate(c) == []


@given(cubulations())
def test_serialize_parse_identity(c):
    assert parse(c.serialize()) == c
    assert len(c.pairings) == 4 * c.n


def test_incidence_graph(ex1, ex2):
    g1 = incidence_graph(ex1)
    assert g1.vertices == (0,) and len(g1.edges) == 4 and all(a == b == 0 for a, b, _ in g1.edges)
    g2 = incidence_graph(ex2)
    assert len(g2.edges) == 8 and all({a, b} == {0, 1} for a, b, _ in g2.edges)
    assert facet_slots(ex1, 0) == 8 and facet_slots(ex2, 1) == 8
    nxg = to_networkx(ex2)
    assert nxg.number_of_edges() == 8 and nx.is_connected(nxg)


@given(cubulations())
def test_every_vertex_meets_eight_slots(c):
    assert all(facet_slots(c, i) == 8 for i in range(c.n))


def test_dot_labels_edges_with_maps(ex2):
    dot = to_dot(ex2)
    assert dot.startswith("graph cubulation {") and dot.count(" -- ") == 8
    assert '"e0: 0.-1>1.-1 (1 2 3)"' in dot


def test_fixture_files_are_canonical_serializations():
    for name in ("example1", "example2", "seed"):
        text = fixture_text(name)
        body = "".join(line + "\n" for line in text.splitlines() if not line.startswith("#"))
        assert parse(text).serialize() == body
