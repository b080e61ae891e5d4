import pytest
from hypothesis import given, strategies as st

from collatznet.core import (
    DomainError,
    collatz_step,
    collatz_trace,
    nu2,
    odd_iterates,
    odd_successor,
    odd_terms,
    odd_trace,
)
from oracles import nu2_by_halving, odd_filtered, raw_trace

EXAMPLE1_HEAD = [27, 82, 41, 124, 62, 31, 94, 47, 142, 71]
EXAMPLE2 = [27, 41, 31, 47, 71, 107, 161, 121, 91, 137, 103, 155, 233, 175, 263,
            395, 593, 445, 167, 251, 377, 283, 425, 319, 479, 719, 1079, 1619,
            2429, 911, 1367, 2051, 3077, 577, 433, 325, 61, 23, 35, 53, 5, 1]


@pytest.mark.parametrize("x, e", [(1, 0), (4, 2), (328, 3), (2**200, 200), (3 * 2**77, 77)])
def test_nu2(x, e):
    assert nu2(x) == e == nu2_by_halving(x)


@given(st.integers(min_value=1, max_value=10**40))
def test_nu2_matches_halving(x):
    assert nu2(x) == nu2_by_halving(x)


def test_zero_is_outside_domain():
    with pytest.raises(DomainError):
        nu2(0)
    with pytest.raises(DomainError):
        collatz_step(0)
    with pytest.raises(DomainError):
        collatz_trace(0)


@pytest.mark.parametrize("x, y", [(27, 82), (82, 41), (1, 4)])
def test_collatz_step(x, y):
    assert collatz_step(x) == y


def test_trace_of_27():
    terms, truncated = collatz_trace(27)
    assert not truncated
    assert len(terms) == 112
    assert terms[:10] == EXAMPLE1_HEAD
    assert terms[-4:] == [8, 4, 2, 1]
    assert terms == raw_trace(27)


@pytest.mark.parametrize("a, expected", [(1, [1]), (4, [4, 2, 1])])
def test_trivial_traces(a, expected):
    assert collatz_trace(a) == (expected, False)


def test_trace_truncation():
    terms, truncated = collatz_trace(27, 5)
    assert truncated and terms == EXAMPLE1_HEAD[:6]
    # budget exactly large enough
    terms, truncated = collatz_trace(27, 111)
    assert not truncated and terms[-1] == 1


@pytest.mark.parametrize("a, dst, k", [(27, 41, 1), (3, 5, 1), (1, 1, 2)])
def test_odd_successor(a, dst, k):
    step = odd_successor(a)
    assert (step.dst, step.halvings) == (dst, k)
    assert step.holds()


def test_odd_successor_rejects_even():
    with pytest.raises(DomainError):
        odd_successor(4)


def test_odd_trace_examples():
    tr = odd_trace(27)
    assert list(tr.terms) == EXAMPLE2 and not tr.truncated
    assert odd_trace(1).terms == (1,)
    assert odd_trace(15).terms == (15, 23, 35, 53, 5, 1)


def test_odd_trace_steps_link_terms():
    tr = odd_trace(27)
    for i, step in enumerate(tr.steps):
        assert step.src == tr.terms[i] and step.dst == tr.terms[i + 1]


def test_odd_trace_truncated():
    tr = odd_trace(27, 3)
    assert tr.truncated and tr.terms == (27, 41, 31, 47)


@given(st.integers(min_value=0, max_value=10**60))
def test_odd_step_identity(h):
    step = odd_successor(2 * h + 1)
    assert 3 * step.src + 1 == step.dst * 2**step.halvings
    assert step.dst % 2 == 1 and step.halvings >= 1


def test_odd_trace_equals_filtered_raw_trace():
    for a in range(1, 10**5 + 1, 2):
        terms, truncated = odd_terms(a)
        assert not truncated
        raw = raw_trace(a)
        assert terms == [x for x in raw if x % 2], a
    # even terms between odd ones halve down to the next term
    raw = raw_trace(703)
    for x, y in zip(raw, raw[1:]):
        if x % 2 == 0:
            assert y == x // 2


def test_odd_iterates_continue_past_one():
    assert odd_iterates(3, 4) == [3, 5, 1, 1, 1]
    assert odd_iterates(27, 41) == odd_filtered(27)
