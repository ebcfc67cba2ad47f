import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cubekit.signed_perm import SignedPerm, all_signed_perms, compose, invert, negate, swap


@pytest.mark.parametrize("degree,order", [(2, 8), (3, 48), (4, 384)])
def test_group_orders(degree, order):
    group = all_signed_perms(degree)
    assert len(group) == order == len(set(group))
    assert sum(g.det() == 1 for g in group) == order // 2


def perms(degree):
    return st.sampled_from(all_signed_perms(degree))


@given(perms(4), perms(4))
def test_compose_matches_matrices(p, q):
    # compose(p, q) applies p first
    assert np.array_equal(np.array(compose(p, q).matrix()), np.array(q.matrix()) @ np.array(p.matrix()))


@given(perms(4), perms(4))
def test_det_is_multiplicative(p, q):
    assert compose(p, q).det() == p.det() * q.det()
    assert p.det() == round(np.linalg.det(np.array(p.matrix())))


@given(perms(3))
def test_inverse(p):
    e = SignedPerm.identity(3)
    assert compose(p, invert(p)) == e == compose(invert(p), p)


def test_parse_and_str_round_trip():
    p = SignedPerm.parse("2 -1 3")
    assert p(1) == 2 and p(2) == -1 and p(-1) == -2
    assert str(p) == "2 -1 3"
    assert SignedPerm.parse(str(p)) == p


@pytest.mark.parametrize("text", ["1 1 2", "1 -1", "0 1 2", "1 2 4", "a b c"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        SignedPerm.parse(text)


def test_generators():
    assert swap(1, 2) == SignedPerm((2, 1, 3))
    assert negate(3) == SignedPerm((1, 2, -3))
    assert swap(1, 2).det() == -1 == negate(1).det()


def test_group_closed_under_composition():
    group = set(all_signed_perms(3))
    for p, q in itertools.islice(itertools.product(group, group), 0, None, 7):
        assert compose(p, q) in group
