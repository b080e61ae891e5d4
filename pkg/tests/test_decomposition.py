import pytest
from hypothesis import given, strategies as st

from collatznet.core import DomainError
from collatznet.decomposition import (
    jump_from,
    jump_identity_check,
    max_jump_base,
    odd_jump_base,
    two_adic_decompose,
)
from oracles import jump_by_sum, nu2_by_halving


@pytest.mark.parametrize("a, k, n", [(53, 2, 13), (7, 1, 3), (577, 6, 9)])
def test_two_adic(a, k, n):
    f = two_adic_decompose(a)
    assert (f.k, f.n) == (k, n)
    assert f.value() == a


def test_two_adic_of_one():
    with pytest.raises(DomainError):
        two_adic_decompose(1)


@given(st.integers(min_value=1, max_value=10**50))
def test_two_adic_roundtrip(h):
    a = 2 * h + 1
    f = two_adic_decompose(a)
    assert (f.n << f.k) + 1 == a and f.n % 2 == 1 and f.k == nu2_by_halving(a - 1)


@pytest.mark.parametrize("p, d, a", [(13, 1, 53), (3, 2, 53), (7, 0, 7), (0, 3, 21)])
def test_jump_from(p, d, a):
    assert jump_from(p, d) == a == jump_by_sum(p, d)


@pytest.mark.parametrize("a, p, d", [(53, 3, 2), (13, 3, 1), (21, 0, 3)])
def test_max_jump_base(a, p, d):
    jf = max_jump_base(a)
    assert (jf.p, jf.d, jf.maximal) == (p, d, True)
    assert jf.value() == a


def test_max_jump_base_rejects():
    with pytest.raises(DomainError):
        max_jump_base(7)


def test_max_jump_base_roundtrip_range():
    for a in range(1, 20001, 4):
        jf = max_jump_base(a)
        assert jump_from(jf.p, jf.d) == a and jf.p % 4 != 1


def test_odd_jump_base_stops_at_odd():
    # 3077 = 4*769 + 1 and 769 = 4*192 + 1: the even base is not taken
    assert max_jump_base(3077).p == 192
    oj = odd_jump_base(3077)
    assert (oj.p, oj.d) == (769, 1)
    assert (odd_jump_base(53).p, odd_jump_base(53).d) == (3, 2)
    assert odd_jump_base(5).p == 1
    assert odd_jump_base(325).p == 81


def test_odd_jump_base_is_not_jump_from_odd():
    for a in range(5, 40001, 8):
        oj = odd_jump_base(a)
        assert oj.value() == a and oj.p % 2 == 1
        assert not (oj.p % 4 == 1 and ((oj.p - 1) // 4) % 2 == 1)


@pytest.mark.parametrize("p, d", [(3, 2), (13, 1), (5, 0), (0, 0)])
def test_jump_identity_examples(p, d):
    assert jump_identity_check(p, d)
    assert 3 * jump_from(3, 2) + 1 == 160 == 16 * 10


def test_jump_identity_grid():
    assert all(jump_identity_check(p, d) for p in range(10**4 + 1) for d in range(9))
