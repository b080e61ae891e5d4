import json

import pytest
from hypothesis import given, strategies as st

from collatznet.core import DomainError
from collatznet.network import (
    array_cell,
    array_from_json,
    array_to_json,
    build_array,
    locate,
    merge_target,
    smaller_partner,
    verify_array_properties,
)
from oracles import array_by_definition

admissible = st.integers(0, 10**6).filter(lambda n: n % 3 != 1)


def test_n0_array():
    arr = build_array(0)
    assert arr.u[:5] == (1, 3, 7, 15, 31)
    assert arr.diagonal[:5] == (1, 5, 17, 53, 161)


def test_n3_array():
    arr = build_array(3, 7, 12)
    assert arr.u[:5] == (13, 27, 55, 111, 223)
    assert arr.diagonal == (13, 41, 125, 377, 1133, 3401, 10205)


def test_n2_array():
    arr = build_array(2, 2, 2)
    assert arr.u == (9, 19) and arr.v[1, 1] == 29


def test_build_rejects():
    with pytest.raises(DomainError):
        build_array(1)
    with pytest.raises(DomainError):
        build_array(0, 5, 4)


@pytest.mark.parametrize("n", [0, 2, 3, 5, 6, 8, 9, 299])
def test_build_matches_definition(n):
    arr = build_array(n, 6, 9)
    ref = array_by_definition(n, 6, 9)
    for (i, j), x in ref.items():
        if j >= i:
            assert arr.cell(i, j) == x == array_cell(n, i, j)


@given(admissible, st.integers(0, 10), st.integers(0, 10))
def test_laws(n, i, extra):
    j = i + extra
    arr = build_array(n, i + 1, j + 2)
    x = arr.cell(i, j)
    # geometric row law
    d = arr.cell(i, i)
    assert x == 2 ** (j - i) * d + 2 ** (j - i) - 1
    # column law, one row down
    if j + 1 > i:
        below = build_array(n, i + 2, j + 2).cell(i + 1, j + 1)
        assert 2 * below - 1 == 3 * arr.cell(i, j + 1)


@pytest.mark.parametrize("n", [0, 2, 3])
def test_properties_pass(n):
    rep = verify_array_properties(build_array(n))
    assert rep.passed, rep.violations


def test_property4_deviation_recorded():
    rep = verify_array_properties(build_array(3))
    assert rep.passed
    assert any("property 4" in d for d in rep.deviations)
    rep = verify_array_properties(build_array(2))  # u_0 = 9 = 0 mod 3
    assert not any("property 4" in d for d in rep.deviations)


def test_properties_catch_corruption():
    arr = build_array(3)
    arr.v[2, 5] += 2
    rep = verify_array_properties(arr)
    assert not rep.passed and 6 in rep.failed_properties()


@pytest.mark.parametrize(
    "n, rows, targets",
    [(0, 8, [1, 1, 13, 13, 121, 121, 1093, 1093]), (3, 7, [13, 31, 31, 283, 283, 2551, 2551])],
)
def test_merge_targets(n, rows, targets):
    arr = build_array(n, rows, 13)
    got = [merge_target(arr, i) for i in range(rows)]
    assert [t.value for t in got] == targets
    assert all(t.merged and t.congruent_1_mod_3 for t in got)


def test_merge_target_flag_for_t0():
    tg = merge_target(build_array(5), 0)
    assert tg.value == 21 and not tg.congruent_1_mod_3


def test_smaller_partner():
    assert smaller_partner(0) is None
    assert smaller_partner(3) == 3
    assert smaller_partner(5) == 3  # 5 -> 3 on the reverse trace
    assert smaller_partner(2) == 7  # successor of u_0 = 9


@pytest.mark.parametrize("a, n, i, j", [(27, 3, 0, 1), (5, 0, 1, 1), (1, 0, 0, 0), (17, 0, 2, 2)])
def test_locate(a, n, i, j):
    loc = locate(a)
    assert (loc.n, loc.i, loc.j) == (n, i, j)


def test_locate_matches_search():
    # brute force: scan small arrays for each odd value
    seen = {}
    for n in range(0, 130):
        if n % 3 == 1:
            continue
        arr = build_array(n, 9, 11)
        for i in range(arr.rows):
            for j in range(i, arr.cols):
                seen.setdefault(arr.cell(i, j), (n, i, j))
    for a in range(1, 400, 2):
        loc = locate(a)
        assert seen[a] == (loc.n, loc.i, loc.j), a


def test_locate_roundtrip():
    for a in range(1, 10**5 + 1, 2):
        loc = locate(a)
        assert loc.n % 3 != 1 and loc.j >= loc.i
        assert array_cell(loc.n, loc.i, loc.j) == a


def test_disjoint_top_rows():
    seen = set()
    for n in range(0, 400):
        if n % 3 == 1:
            continue
        row = set(build_array(n, 1, 10).u)
        assert not row & seen
        seen |= row


def test_json_roundtrip():
    arr = build_array(3, 4, 6)
    data = array_to_json(arr)
    again = array_from_json(json.dumps(data))
    assert again == arr and again.v == arr.v
    assert array_to_json(again) == data
