import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcycle.perm import (
    compose,
    cycle_type,
    from_cycles,
    identity,
    inverse,
    is_permutation,
    perm_order,
)

perms5 = st.permutations(range(5)).map(tuple)


def test_identity_compose():
    p = (2, 0, 1)
    assert compose(identity(3), p) == p
    assert compose(p, identity(3)) == p


def test_involution_inverse():
    swap = from_cycles(3, [(0, 1)])
    assert inverse(swap) == swap


def test_three_cycle_order():
    assert perm_order(from_cycles(4, [(0, 1, 3)])) == 3


def test_degree_mismatch():
    with pytest.raises(ValueError):
        compose((0, 1), (0, 1, 2))


def test_is_permutation():
    assert is_permutation((2, 0, 1))
    assert not is_permutation((0, 0, 1))
    assert not is_permutation((0, 3, 1))


def test_from_cycles_rejects_overlap():
    with pytest.raises(ValueError):
        from_cycles(4, [(0, 1), (1, 2)])


@given(perms5, perms5)
def test_compose_inverse(p, q):
    assert compose(p, inverse(p)) == identity(5)
    assert inverse(compose(p, q)) == compose(inverse(q), inverse(p))


@given(perms5)
def test_order_annihilates(p):
    k = perm_order(p)
    result = identity(5)
    for _ in range(k):
        result = compose(p, result)
    assert result == identity(5)
    assert sum(cycle_type(p)) == 5
