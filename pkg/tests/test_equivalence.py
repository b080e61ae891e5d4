import pytest
from hypothesis import given, strategies as st

from collatznet.core import DomainError
from collatznet.equivalence import (
    MergeCase,
    are_equivalent,
    coupling_analysis,
    descent_prefix,
    fourfold_chain_equivalent,
    k1_merge_alternative,
    kequals2_next,
    merge_within,
    predict_odd_iterates,
    second_odd,
)
from oracles import first_common, odd_filtered, second_odd_raw

odd = st.integers(min_value=0, max_value=10**30).map(lambda h: 2 * h + 1)


@pytest.mark.parametrize("a, b", [(27, 41), (109, 41), (1, 1)])
def test_second_odd(a, b):
    assert second_odd(a) == b == second_odd_raw(a)


@pytest.mark.parametrize("a, b, eq", [(27, 109, True), (5, 21, True), (3, 5, False)])
def test_are_equivalent(a, b, eq):
    assert are_equivalent(a, b) is eq


@pytest.mark.parametrize("a, steps", [(27, 3), (1, 1), (319, 2)])
def test_fourfold_chain(a, steps):
    assert fourfold_chain_equivalent(a, steps)


def test_fourfold_chain_319_values():
    assert second_odd(319) == second_odd(1277) == second_odd(5109) == 479


def test_equivalent_with_4a_plus_1_range():
    for a in range(1, 10**5 + 1, 2):
        assert are_equivalent(a, 4 * a + 1)


@given(odd)
def test_equivalent_with_4a_plus_1_big(a):
    assert are_equivalent(a, 4 * a + 1)


def test_descent_prefix_examples():
    d = descent_prefix(319)
    assert d.r == 5 and d.terms == (319, 479, 719, 1079, 1619, 2429) and d.k >= 2
    d = descent_prefix(1)
    assert (d.r, d.terms, d.k) == (0, (1,), 2)
    d = descent_prefix(3)
    assert (d.r, d.terms, d.k) == (1, (3, 5), 4)


def test_descent_prefix_range():
    for a in range(1, 20001, 2):
        d = descent_prefix(a)
        assert d.terms[-1] % 4 == 1
        assert list(d.terms) == odd_filtered(a)[: d.r + 1] or d.terms[-1] == 1


def test_predict_577():
    p = predict_odd_iterates(577)
    assert p.predicted == (433, 325) == p.actual
    assert p.merge_partner == 81 and p.merge_ok


def test_predict_small():
    p = predict_odd_iterates(17)
    assert p.predicted == (13,) == p.actual and p.merge_partner == 3 and p.merge_ok
    p = predict_odd_iterates(33)
    assert p.predicted == (25, 19) == p.actual and p.merge_partner is None


def test_predict_rejects_small_k():
    with pytest.raises(DomainError):
        predict_odd_iterates(13)


def test_predict_range():
    for a in range(9, 10**5, 8):
        assert predict_odd_iterates(a).ok, a


@given(st.integers(3, 200), st.integers(0, 10**20))
def test_predict_big(k, h):
    a = (2 * h + 1 << k) + 1
    assert predict_odd_iterates(a).ok


@pytest.mark.parametrize("a, nxt", [(53, 5), (13, 5)])
def test_kequals2_next(a, nxt):
    assert kequals2_next(a) == nxt == second_odd(a)


def test_kequals2_next_rejects():
    with pytest.raises(DomainError):
        kequals2_next(33)


def test_kequals2_range():
    for a in range(5, 10**5, 8):
        assert kequals2_next(a) == second_odd(a)


@pytest.mark.parametrize(
    "a, b, common, ia, ib", [(15, 7, 5, 4, 4), (45, 5, 5, 3, 0), (27, 27, 27, 0, 0)]
)
def test_merge_within(a, b, common, ia, ib):
    rep = merge_within(a, b)
    assert rep.merged and (rep.common_value, rep.index_in_a, rep.index_in_b) == (common, ia, ib)
    assert first_common(a, b) == (common, ia, ib)


def test_merge_within_budget():
    rep = merge_within(27, 15, 2)
    assert not rep.merged and rep.budget_exhausted


def test_merge_symmetric_and_reflexive():
    for a in range(1, 400, 2):
        assert merge_within(a, a).index_in_a == 0
        for b in range(1, 60, 2):
            assert merge_within(a, b).merged == merge_within(b, a).merged


def test_coupling_example_3():
    rep = coupling_analysis(3)
    assert (rep.r, rep.k) == (1, 4) and rep.relations_verified
    assert rep.merge_case is MergeCase.KGT2_L_MERGES_M
    assert rep.m[:3] == (7, 11, 17) and rep.m[2] == 2**4 * rep.n[2] + 1
    assert rep.l[:4] == (15, 23, 35, 53) and rep.l[3] == 4 * rep.m[3] + 1
    assert rep.l[4] == rep.m[4] == 5


def test_coupling_n1():
    rep = coupling_analysis(1)
    assert (rep.r, rep.k, rep.merge_case) == (0, 2, MergeCase.K2_M_MERGES_N)
    assert rep.m[:3] == (3, 5, 1) and rep.relations_verified


def test_coupling_n13():
    rep = coupling_analysis(13)
    assert (rep.r, rep.k, rep.merge_case) == (0, 3, MergeCase.KGT2_L_MERGES_M)
    assert (rep.m[0], rep.l[0]) == (27, 55) and rep.relations_verified


def test_coupling_tails_against_full_traces():
    # the one-index tail checks agree with whole-trace comparison
    for n0 in range(1, 3000, 2):
        rep = coupling_analysis(n0)
        tn, tm, tl = odd_filtered(n0), odd_filtered(2 * n0 + 1), odd_filtered(4 * n0 + 3)
        r = rep.r
        if rep.merge_case is MergeCase.K2_M_MERGES_N:
            assert tm[r + 2:] == tn[r + 2:] or tn[r + 2:] == [] and tm[r + 2:] in ([], [1])
        else:
            assert tl[r + 3:] == tm[r + 3:]


def test_coupling_budget():
    rep = coupling_analysis(2**40 - 1, 5)
    assert rep.budget_exhausted and not rep.relations_verified


def test_coupling_range():
    for n0 in range(1, 10**4, 2):
        assert coupling_analysis(n0).relations_verified, n0


def test_k1_alternative():
    assert k1_merge_alternative(7) in {"n", "2a+1", "tie"}
    with pytest.raises(DomainError):
        k1_merge_alternative(5)
