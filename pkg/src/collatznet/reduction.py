"""Companion sequence b_i and the 24t+21 representative of an odd number.

Each ``b_i`` is an odd multiple of 3 congruent to 21 mod 24 that is a jump
from the odd term ``a_i`` (``b_0`` from a, or from 2a+1 when a = 2 mod 3).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from collatznet.core import DEFAULT_BUDGET, DomainError, nu2, odd_terms, require_odd
from collatznet.decomposition import odd_jump_base, two_adic_decompose
from collatznet.equivalence import MergeReport, merge_within


class StepCase(str, enum.Enum):
    MOD4_3 = "MOD4_3"
    K_GT_2 = "K_GT_2"
    K_EQ_2_R1 = "K_EQ_2_R1"
    K_EQ_2_RGT2 = "K_EQ_2_RGT2"
    UNIT = "UNIT"


@dataclass(frozen=True)
class ReductionStep:
    a_prev: int
    case: StepCase
    p_base: int | None
    b: int

    def residues_ok(self) -> bool:
        b = self.b
        return b % 2 == 1 and b % 3 == 0 and b % 12 == 9 and b % 24 == 21


def b_zero(a: int) -> int:
    require_odd(a)
    if a == 1:
        return 21
    rem = a % 3
    if rem == 0:
        return 12 * (16 * (a // 3) + 1) + 9
    if rem == 1:
        return 12 * ((4 * a - 1) // 3) + 9
    return 12 * ((2 * a - 1) // 3) + 9


def b_step(a_prev: int) -> ReductionStep:
    require_odd(a_prev)
    if a_prev == 1:
        return ReductionStep(1, StepCase.UNIT, None, 21)
    if a_prev % 4 == 3:
        return ReductionStep(a_prev, StepCase.MOD4_3, None, 12 * ((a_prev - 1) // 2) + 9)
    if a_prev % 8 == 1:
        return ReductionStep(a_prev, StepCase.K_GT_2, None, 12 * a_prev + 9)
    p = odd_jump_base(a_prev).p
    if p == 1:
        return ReductionStep(a_prev, StepCase.UNIT, 1, 21)
    r = nu2(p - 1)
    if r == 2:
        raise AssertionError(f"odd jump base {p} of {a_prev} is 5 mod 8")
    if r == 1:
        return ReductionStep(a_prev, StepCase.K_EQ_2_R1, p, 12 * ((p - 1) // 2) + 9)
    return ReductionStep(a_prev, StepCase.K_EQ_2_RGT2, p, 12 * p + 9)


@dataclass(frozen=True)
class BRow:
    a: int
    b: int
    step: ReductionStep | None


def b_trace(a: int, max_steps: int = DEFAULT_BUDGET) -> list[BRow]:
    """Rows ``(a_i, b_i)`` along the odd trace of ``a``, ending at a_i = 1."""
    require_odd(a)
    terms, _ = odd_terms(a, max_steps)
    rows = [BRow(terms[0], b_zero(terms[0]), None)]
    for prev, cur in zip(terms, terms[1:]):
        step = b_step(prev)
        rows.append(BRow(cur, step.b, step))
    return rows


def reduce_to_residue21(a: int) -> tuple[int, int]:
    b = b_zero(a)
    if b % 24 != 21:
        raise AssertionError(f"b_0({a}) = {b} is not 21 mod 24")
    return b, (b - 21) // 24


def closed_form_next_b(a_i: int) -> int | None:
    """``b_{i+1}`` from the 3(2x+1) / 3(4x+3) closed forms; None when a_i or its
    odd base is 1."""
    if a_i == 1:
        return None
    k = two_adic_decompose(a_i).k
    if k == 1:
        return 3 * (2 * a_i + 1)
    if k > 2:
        return 3 * (4 * a_i + 3)
    j = odd_jump_base(a_i).p
    if j == 1:
        return None
    r = nu2(j - 1)
    return 3 * (2 * j + 1) if r == 1 else 3 * (4 * j + 3)


@dataclass(frozen=True)
class RepresentativeMerge:
    t: int
    value: int
    target: int
    report: MergeReport


def representative_target(t: int) -> int:
    if t < 0:
        raise DomainError(f"t must be >= 0, got {t}")
    if t == 0:
        return 1
    p = 2 * t + 1
    return p if two_adic_decompose(p).k > 2 else 2 * p + 1


def representative_merge(t: int, budget: int = DEFAULT_BUDGET) -> RepresentativeMerge:
    target = representative_target(t)
    v = 24 * t + 21
    return RepresentativeMerge(t, v, target, merge_within(v, target, budget))


# -- table rendering -------------------------------------------------------

TABLE_HEADER = "b_i | a_i | d_i | 3d_i | e_i | 3e_i"


def _pow(base: int, e: int) -> str:
    return str(base) if e == 1 else f"{base}^{e}"


def describe_odd(a: int) -> str:
    """``a`` as ``2 x n + 1``, ``2^k x n + 1`` or its jump form from the odd base."""
    if a == 1:
        return "1"
    form = two_adic_decompose(a)
    if form.k != 2:
        return f"{a} = {_pow(2, form.k)} x {form.n} + 1"
    jf = odd_jump_base(a)
    tail = " + ".join(_pow(4, e) for e in range(jf.d - 1, 0, -1))
    tail = f" + {tail} + 1" if tail else " + 1"
    return f"{a} = {_pow(4, jf.d)} x {jf.p}{tail}"


def companion_columns(a: int) -> tuple[str, str, str, str]:
    """The d_i, 3d_i, e_i, 3e_i cells for one row (empty strings where unused)."""
    if a == 1:
        return "", "", "", ""
    form = two_adic_decompose(a)
    if form.k == 1:
        d = 2 * a + 1
        return str(d), str(3 * d), "", ""
    if form.k > 2:
        e = 4 * a + 3
        return "", "", str(e), str(3 * e)
    p = odd_jump_base(a).p
    if p != 1 and nu2(p - 1) == 1:
        d = 2 * p + 1
        return str(d), str(3 * d), "", ""
    e = 4 * p + 3
    return "", "", str(e), str(3 * e)


def render_table(a: int, max_steps: int = DEFAULT_BUDGET) -> str:
    lines = [TABLE_HEADER]
    for row in b_trace(a, max_steps):
        cells = [f"{row.b} = 12 x {(row.b - 9) // 12} + 9", describe_odd(row.a)]
        cells.extend(companion_columns(row.a))
        lines.append(" | ".join(cells).rstrip(" |"))
    return "\n".join(lines) + "\n"
