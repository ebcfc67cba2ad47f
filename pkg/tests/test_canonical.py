import random
import time

import pytest
from hypothesis import given, settings, strategies as st

from cubekit.canonical import (
    BudgetExceeded,
    are_equivalent,
    canonical_cubulation,
    canonical_form,
    from_compact,
    random_relabeling,
    relabel,
)
from cubekit.cubulation import parse, random_cubulation, validate
from cubekit.cycles import invariant_report
from cubekit.fixtures import FIXTURES, load_fixture
from cubekit.signed_perm import all_signed_perms

from conftest import cubulations


def brute_equivalent_n1(a, b):
    return any(relabel(a, [0], [g]) == b for g in all_signed_perms(4))


@given(cubulations(), st.integers(0, 2**32 - 1))
def test_relabeling_invariance(c, s):
    perm, isos = random_relabeling(c.n, random.Random(s))
    d = relabel(c, perm, isos)
    assert validate(d) == []
    assert canonical_form(d) == canonical_form(c)


@given(cubulations())
def test_idempotent_and_parse_stable(c):
    form = canonical_form(c)
    again = canonical_cubulation(c)
    assert canonical_form(again) == form
    assert canonical_form(parse(c.serialize())) == form
    assert again.serialize() == form.text
    assert from_compact(c.n, form.compact()) == again


@given(cubulations(), st.integers(0, 2**32 - 1))
def test_relabel_preserves_invariants(c, s):
    d = relabel(c, *random_relabeling(c.n, random.Random(s)))
    assert invariant_report(d).profile == invariant_report(c).profile


@settings(max_examples=30)
@given(st.integers(0, 2**32 - 1), st.booleans())
def test_matches_brute_force_at_one_cube(s, orientable):
    rng = random.Random(s)
    a = random_cubulation(rng, 1, orientable=orientable)
    # half the time b is a relabeling of a, otherwise an independent sample
    b = relabel(a, [0], [rng.choice(all_signed_perms(4))]) if rng.random() < 0.5 else random_cubulation(rng, 1, orientable=orientable)
    assert are_equivalent(a, b) == brute_equivalent_n1(a, b)


def test_fixtures_pairwise_inequivalent():
    cs = [load_fixture(name) for name in FIXTURES]
    forms = {canonical_form(c).key for c in cs}
    assert len(forms) == len(cs)
    ex1, ex2, seed = cs[:3]
    assert not are_equivalent(ex1, ex2)
    assert not are_equivalent(ex1, seed)


def test_budget():
    c = random_cubulation(random.Random(0), 3)
    with pytest.raises(BudgetExceeded):
        canonical_form(c, budget=100)
    assert canonical_form(c, budget=384 * 3) == canonical_form(c)


def test_timing_small_n():
    rng = random.Random(5)
    canonical_form(random_cubulation(rng, 1))  # build tables
    for n in (1, 2):
        c = random_cubulation(rng, n)
        t = time.perf_counter()
        canonical_form(c)
        assert time.perf_counter() - t < 1.0


def test_requires_complete_connected(ex1):
    partial = ex1.__class__.build(1, ex1.pairings[1:], [ex1.pairings[0].source, ex1.pairings[0].target])
    with pytest.raises(ValueError):
        canonical_form(partial)
