import math
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given

from cubekit.cubulation import Cubulation
from cubekit.cycles import (
    MONODROMY_CLASSES,
    ORIENTATION_PRESERVING,
    Transitions,
    crossing_numbers,
    cusp_count,
    invariant_report,
    monodromy_at,
    monodromy_class,
    section_shape,
    trace_cycles,
)
from cubekit.hypercube import SquareFrame, map_square, other_facet, squares_of_cube
from cubekit.signed_perm import SignedPerm, all_signed_perms, compose, invert

from conftest import cubulations


def oracle_partition(c: Cubulation):
    """Squares identified across every pairing; components are the cycles."""
    g = nx.Graph()
    for i in range(c.n):
        g.add_nodes_from(squares_of_cube(i))
    for p in c.pairings:
        for q in squares_of_cube(p.source.cube):
            if p.source in q.facets:
                g.add_edge(q, map_square(p, q)[0])
    return sorted(len(cc) for cc in nx.connected_components(g))


def oracle_monodromy(c: Cubulation, q):
    """Walk from q through its first facet, carrying the frame with map_square."""
    c_ax, d_ax = q.tangent_axes
    frame = SquareFrame(q, c_ax, d_ax)
    square, exit_facet = q, q.facets[0]
    while True:
        square, frame = map_square(c.partner[exit_facet], square, frame)
        exit_facet = other_facet(square, c.partner[exit_facet].target)
        if square == q and exit_facet == q.facets[0]:
            break

    def coord(w):
        k = 1 if abs(w) == c_ax else 2
        return k if w > 0 else -k

    return SignedPerm((coord(frame.tangent1), coord(frame.tangent2)))


def test_example1(ex1):
    rep = invariant_report(ex1)
    assert (rep.n, rep.k, rep.chi) == (1, 6, 4)
    assert rep.profile == ((4, "I"),) * 6
    assert all(cu.shape == "3-torus 2x2x4" and cu.sides == (2, 2, 4) for cu in rep.cusps)
    assert rep.volume_coefficient == Fraction(16, 3)
    assert rep.total_section_volume == 96
    assert rep.volume_text() == "16/3*pi^2 = 52.6378901391"
    assert math.isclose(rep.volume, 16 * math.pi ** 2 / 3)


def test_example2(ex2):
    rep = invariant_report(ex2)
    assert (rep.n, rep.k, rep.chi, rep.total_section_volume) == (2, 24, 8, 192)
    assert rep.profile == ((2, "I"),) * 24
    assert rep.orientable


def test_seed(seed):
    rep = invariant_report(seed)
    assert rep.profile == ((24, "I"),)
    assert rep.cusps[0].shape == "3-torus 2x2x24"
    assert rep.volume_coefficient == Fraction(16, 3)


def test_partial_cubulation_gives_open_chains(ex1):
    partial = Cubulation.build(1, ex1.pairings[1:], [ex1.pairings[0].source, ex1.pairings[0].target])
    cycles = trace_cycles(partial)
    chains = [cy for cy in cycles if not cy.closed]
    assert sum(cy.length for cy in cycles) == 24
    assert len(chains) == 6 and sum(cy.closed for cy in cycles) == 3
    assert cusp_count(partial) == 3
    with pytest.raises(ValueError):
        invariant_report(partial)


def test_monodromy_classes_exhaustive():
    classes = {monodromy_class(m) for m in all_signed_perms(2)}
    assert classes == set(MONODROMY_CLASSES)
    assert monodromy_class(SignedPerm((1, 2))) == "I"
    assert monodromy_class(SignedPerm((-1, -2))) == "-I"
    assert monodromy_class(SignedPerm((-2, 1))) == "R4" == monodromy_class(SignedPerm((2, -1)))
    assert monodromy_class(SignedPerm((1, -2))) == "reflection-axis"
    assert monodromy_class(SignedPerm((2, 1))) == "reflection-diagonal"


def test_classes_are_conjugacy_classes():
    group = all_signed_perms(2)
    for m in group:
        orbit = {compose(compose(invert(g), m), g) for g in group}
        assert {monodromy_class(x) for x in orbit} == {monodromy_class(m)}
        same = {x for x in group if monodromy_class(x) == monodromy_class(m)}
        assert orbit == same


def test_section_shapes():
    assert section_shape(7, "-I") == "torus-bundle[-I] h=7"
    with pytest.raises(ValueError):
        section_shape(3, "reflection-axis")


@given(cubulations())
def test_partition_matches_oracle(c):
    cycles = trace_cycles(c)
    squares = [sq for cy in cycles for sq, _ in cy.squares]
    assert len(squares) == len(set(squares)) == 24 * c.n
    assert sorted(cy.length for cy in cycles) == oracle_partition(c)
    assert cusp_count(c) == len(cycles)


@given(cubulations(max_n=2))
def test_monodromy_matches_oracle(c):
    for cy in trace_cycles(c):
        q = cy.squares[0][0]
        assert monodromy_class(oracle_monodromy(c, q)) == cy.monodromy_class


@given(cubulations(max_n=2))
def test_monodromy_independent_of_start_and_reversal_inverts(c):
    tr = Transitions(c)
    for cy in trace_cycles(c, tr):
        for s in cy.states:
            m = monodromy_at(tr, s)
            assert monodromy_class(m) == cy.monodromy_class
            back = monodromy_at(tr, s ^ 1)
            assert back == invert(m)


@given(cubulations(orientable=True))
def test_orientable_monodromies_preserve_orientation(c):
    rep = invariant_report(c)
    assert rep.orientable
    assert all(cu.monodromy_class in ORIENTATION_PRESERVING for cu in rep.cusps)
    assert all(cu.shape is not None for cu in rep.cusps)


@given(cubulations())
def test_conservation(c):
    rep = invariant_report(c)
    assert sum(cu.h for cu in rep.cusps) == 24 * c.n
    assert rep.total_section_volume == 96 * c.n
    assert rep.volume_coefficient == Fraction(4, 3) * rep.chi


def test_crossing_numbers(seed, ex1):
    cycle = trace_cycles(seed)[0]
    counts = crossing_numbers(seed, cycle)
    assert len(counts) == 4 and 0 in counts
    for cy in trace_cycles(ex1):
        # the cycle of {a, b} squares leaves through (a, s) and later (a, -s): signs cancel
        assert crossing_numbers(ex1, cy) == [0, 0, 0, 0]
        assert len({ex1.partner[f].normalized() for _, f in cy.squares}) == 2
