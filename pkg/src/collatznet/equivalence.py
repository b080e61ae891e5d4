"""Equivalence (shared second odd term), merging, and the structural
predictions linking the odd traces of A, 2A+1, 4A+1 and 4A+3."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from collatznet.core import (
    DEFAULT_BUDGET,
    DomainError,
    odd_iterates,
    odd_successor,
    odd_terms,
    require_odd,
)
from collatznet.decomposition import max_jump_base, two_adic_decompose


class BudgetExhausted(RuntimeError):
    """An iteration ran out of budget before a definite answer."""


def second_odd(a: int) -> int:
    return odd_successor(a).dst


def are_equivalent(a: int, b: int) -> bool:
    return second_odd(a) == second_odd(b)


def fourfold_chain_equivalent(a: int, steps: int) -> bool:
    target = second_odd(a)
    c = a
    for _ in range(steps):
        c = 4 * c + 1
        if second_odd(c) != target:
            return False
    return True


@dataclass(frozen=True)
class DescentPrefix:
    r: int
    terms: tuple[int, ...]
    k: int


def descent_prefix(a: int, budget: int = DEFAULT_BUDGET) -> DescentPrefix:
    """Leading run of single-halving odd steps, up to the first term = 1 mod 4."""
    require_odd(a)
    terms = [a]
    x = a
    for _ in range(budget):
        step = odd_successor(x)
        if x % 4 == 1:
            if step.halvings < 2:
                raise AssertionError(f"{x} = 1 mod 4 but halved only once")
            return DescentPrefix(len(terms) - 1, tuple(terms), step.halvings)
        if step.halvings != 1:
            raise AssertionError(f"{x} = 3 mod 4 but halved {step.halvings} times")
        x = step.dst
        terms.append(x)
    raise BudgetExhausted(f"no term = 1 mod 4 within {budget} odd steps from {a}")


@dataclass(frozen=True)
class IteratePrediction:
    a: int
    k: int
    n: int
    predicted: tuple[int, ...]
    actual: tuple[int, ...]
    merge_partner: int | None
    merge_ok: bool | None

    @property
    def ok(self) -> bool:
        return self.predicted == self.actual and self.merge_ok is not False


def predict_odd_iterates(a: int) -> IteratePrediction:
    """Closed-form odd iterates ``2^(k-2i) * 3^i * n + 1`` of ``a = 2^k n + 1``, k > 2."""
    form = two_adic_decompose(a)
    k, n = form.k, form.n
    if k <= 2:
        raise DomainError(f"{a} = 2^{k}*{n}+1 needs k > 2")
    j, r0 = divmod(k, 2)
    last = j - 1 if r0 == 0 else j
    predicted = tuple((3**i * n << (k - 2 * i)) + 1 for i in range(1, last + 1))
    actual = tuple(odd_iterates(a, last)[1:])
    partner = merge_ok = None
    if r0 == 0:
        # a_{j-1} = 4 * 3^(j-1) n + 1, a one-step jump from 3^(j-1) n
        partner = 3 ** (j - 1) * n
        merge_ok = are_equivalent(actual[-1], partner) and actual[-1] == 4 * partner + 1
    return IteratePrediction(a, k, n, predicted, actual, partner, merge_ok)


def kequals2_next(a: int) -> int:
    if a < 1 or a % 8 != 5:
        raise DomainError(f"kequals2_next needs a = 4n + 1 with n odd, got {a}")
    jf = max_jump_base(a)
    x = 3 * jf.p + 1
    return x >> 1 if jf.p & 1 else x


@dataclass(frozen=True)
class MergeReport:
    a: int
    b: int
    merged: bool
    common_value: int | None = None
    index_in_a: int | None = None
    index_in_b: int | None = None
    budget_exhausted: bool = False


def merge_within(a: int, b: int, budget: int = DEFAULT_BUDGET) -> MergeReport:
    """Earliest term of ``a``'s odd trace that also lies in ``b``'s."""
    require_odd(a)
    require_odd(b)
    ta, trunc_a = odd_terms(a, budget)
    tb, trunc_b = odd_terms(b, budget)
    index_b: dict[int, int] = {}
    for idx, x in enumerate(tb):
        index_b.setdefault(x, idx)
    for idx, x in enumerate(ta):
        if x in index_b:
            return MergeReport(a, b, True, x, idx, index_b[x], False)
    return MergeReport(a, b, False, budget_exhausted=trunc_a or trunc_b)


class MergeCase(str, enum.Enum):
    K2_M_MERGES_N = "K2_M_MERGES_N"
    KGT2_L_MERGES_M = "KGT2_L_MERGES_M"


@dataclass(frozen=True)
class CouplingReport:
    n0: int
    r: int | None
    k: int | None
    j: int | None
    merge_case: MergeCase | None
    relations_verified: bool
    budget_exhausted: bool = False
    failures: tuple[str, ...] = field(default=())
    n: tuple[int, ...] = ()
    m: tuple[int, ...] = ()
    l: tuple[int, ...] = ()


def coupling_analysis(n0: int, budget: int = DEFAULT_BUDGET) -> CouplingReport:
    """Relate the odd traces of ``n0``, ``2 n0 + 1`` and ``4 n0 + 3``.

    ``r`` is the first index on the n-trace whose step halves more than
    once, with ``k`` halvings.  Since odd iteration is a function, the tail
    identities (``m_i = n_i`` past ``r + 1``, ``l_i = m_i`` past ``r + 2``)
    are checked at their first index, which fixes every later one.
    """
    require_odd(n0)
    m0 = 2 * n0 + 1
    l0 = 2 * m0 + 1
    x, r = n0, 0
    while True:
        if r >= budget:
            return CouplingReport(n0, None, None, None, None, False, True)
        step = odd_successor(x)
        if step.halvings > 1:
            k = step.halvings
            break
        x = step.dst
        r += 1

    span = r + 3
    n = odd_iterates(n0, span)
    m = odd_iterates(m0, span)
    l = odd_iterates(l0, span)
    fails = []
    for i in range(r + 1):
        if m[i] != 2 * n[i] + 1:
            fails.append(f"m_{i} != 2n_{i}+1")
    if m[r + 1] != (n[r + 1] << k) + 1:
        fails.append(f"m_{r + 1} != 2^{k}n_{r + 1}+1")
    for i in range(r + 2):
        if l[i] != 2 * m[i] + 1:
            fails.append(f"l_{i} != 2m_{i}+1")
    j = odd_successor(m[r + 1]).halvings
    if j <= 1:
        fails.append(f"halvings on m_{r + 1} is {j}, expected > 1")
    if l[r + 2] != (m[r + 2] << j) + 1:
        fails.append(f"l_{r + 2} != 2^{j}m_{r + 2}+1")
    if k == 2:
        case = MergeCase.K2_M_MERGES_N
        if m[r + 2] != n[r + 2]:
            fails.append(f"m_{r + 2} != n_{r + 2}")
    else:
        case = MergeCase.KGT2_L_MERGES_M
        if l[r + 2] != 4 * m[r + 2] + 1:
            fails.append(f"l_{r + 2} != 4m_{r + 2}+1")
        if l[r + 3] != m[r + 3]:
            fails.append(f"l_{r + 3} != m_{r + 3}")
    return CouplingReport(
        n0, r, k, j, case, not fails, False, tuple(fails), tuple(n), tuple(m), tuple(l)
    )


def k1_merge_alternative(a: int, budget: int = DEFAULT_BUDGET) -> str:
    """For ``a = 2n + 1`` with n odd: which of n, 2a+1 joins a's trace first.

    Returns ``"n"``, ``"2a+1"``, ``"tie"`` or ``"neither"``; the comparison is
    by the index in a's trace of the earliest shared term.
    """
    form = two_adic_decompose(a)
    if form.k != 1:
        raise DomainError(f"{a} is not 3 mod 4")
    with_n = merge_within(a, form.n, budget)
    with_2a = merge_within(a, 2 * a + 1, budget)
    if not with_n.merged and not with_2a.merged:
        return "neither"
    if not with_2a.merged:
        return "n"
    if not with_n.merged:
        return "2a+1"
    if with_n.index_in_a == with_2a.index_in_a:
        return "tie"
    return "n" if with_n.index_in_a < with_2a.index_in_a else "2a+1"


def render_coupling(rep: CouplingReport, budget: int = DEFAULT_BUDGET) -> str:
    """Text block in the n_i / m_i / l_i layout, with the two pivot identities."""
    lines = []
    for name, start in (("n", rep.n0), ("m", 2 * rep.n0 + 1), ("l", 4 * rep.n0 + 3)):
        terms, _ = odd_terms(start, budget)
        lines.append(f"{name}_i: " + " ".join(map(str, terms)))
    if rep.r is None:
        lines.append("budget exhausted before r was found")
        return "\n".join(lines) + "\n"
    r, k = rep.r, rep.k
    lines.append(f"r={r} k={k}")
    lines.append(f"m_{r + 1} = 2^{k} n_{r + 1} + 1 = {rep.m[r + 1]}")
    if rep.merge_case is MergeCase.K2_M_MERGES_N:
        lines.append(f"m_{r + 2} = n_{r + 2} = {rep.m[r + 2]}")
    else:
        lines.append(f"l_{r + 2} = 4 m_{r + 2} + 1 = {rep.l[r + 2]}")
    return "\n".join(lines) + "\n"
