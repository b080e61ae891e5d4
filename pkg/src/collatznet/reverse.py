"""Reverse Collatz sequences at the odd level.

The odd predecessor of ``p`` is ``(2p - 1) / 3`` when ``p = 2 mod 3`` and
``(4p - 1) / 3`` when ``p = 1 mod 3``; multiples of 3 have none, so a
reverse trace *converges* when it reaches one.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from collatznet.core import DEFAULT_BUDGET, DomainError, require_odd


class ReverseStatus(str, enum.Enum):
    TRIVIAL = "TRIVIAL"
    CONVERGED = "CONVERGED"
    BUDGET_EXHAUSTED = "BUDGET_EXHAUSTED"


@dataclass(frozen=True)
class ReverseTrace:
    terms: tuple[int, ...]
    status: ReverseStatus
    converged_value: int | None


def reverse_step(x: int) -> int:
    if x < 1:
        raise DomainError(f"reverse_step needs x >= 1, got {x}")
    if x % 2 == 0 and x % 3 == 1:
        return (x - 1) // 3
    return 2 * x


def reverse_odd_successor(p: int) -> int | None:
    require_odd(p, "p")
    rem = p % 3
    if rem == 0:
        return None
    if rem == 2:
        return (2 * p - 1) // 3
    return (4 * p - 1) // 3


def reverse_odd_trace(a: int, budget: int = DEFAULT_BUDGET) -> ReverseTrace:
    require_odd(a)
    if a % 3 == 0:
        return ReverseTrace((a,), ReverseStatus.TRIVIAL, a)
    terms = [a]
    x = a
    for _ in range(budget):
        x = (2 * x - 1) // 3 if x % 3 == 2 else (4 * x - 1) // 3
        terms.append(x)
        if x % 3 == 0:
            return ReverseTrace(tuple(terms), ReverseStatus.CONVERGED, x)
    return ReverseTrace(tuple(terms), ReverseStatus.BUDGET_EXHAUSTED, None)


def reverse_first_of_power_form(a: int, k: int) -> int:
    """First reverse odd term after ``B = 2^k a + 1``, in closed form."""
    require_odd(a)
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    b = (a << k) + 1
    if b % 3 == 0:
        raise DomainError(f"B = 2^{k}*{a}+1 = {b} is a multiple of 3")
    if a % 3 == 0:
        return (a // 3 << (k + 2)) + 1
    return 2 * (((a << k) - 1) // 3) + 1


def first_non_two_mod3(a: int) -> tuple[int, int]:
    """Smallest k >= 0 with ``p_k != 2 mod 3`` on the reverse trace of ``a``.

    Terminates without a budget: ``p -> (2p - 1) / 3`` strictly decreases.
    """
    require_odd(a)
    if a % 3 == 0:
        raise DomainError(f"{a} is a multiple of 3")
    k, p = 0, a
    while p % 3 == 2:
        p = (2 * p - 1) // 3
        k += 1
    return k, p


def split_three(a: int) -> tuple[int, int]:
    """``a = 3^n * b`` with ``b`` coprime to 3."""
    n = 0
    while a % 3 == 0:
        a //= 3
        n += 1
    return n, a


@dataclass(frozen=True)
class ThreeAdicReport:
    a: int
    n: int
    b: int
    q: tuple[int, ...]
    f: tuple[int, ...]
    q_actual: tuple[int, ...]
    f_actual: tuple[int, ...]
    branch: str
    terminal_ok: bool
    proof_parity_holds: bool

    @property
    def matches(self) -> bool:
        return self.q == self.q_actual and self.f == self.f_actual

    @property
    def ok(self) -> bool:
        return self.matches and self.terminal_ok


def _reverse_prefix(x: int, count: int) -> tuple[int, ...]:
    out = []
    for _ in range(count):
        x = reverse_odd_successor(x)
        if x is None:
            break
        out.append(x)
    return tuple(out)


def three_adic_reverse(a: int) -> ThreeAdicReport:
    """Predicted reverse terms ``q_i`` of 2a+1 and ``f_i`` of 4a+1 for ``a = 3^n b``.

    ``branch`` is ``"q"`` when ``b = 1 mod 3`` (q_n should be a multiple
    of 3) and ``"f"`` when ``b = 2 mod 3``.  ``proof_parity_holds`` records
    whether the extra parity condition on ``n`` (odd for the q branch, even
    for the f branch) happens to hold; the terminal claim does not need it.
    """
    require_odd(a)
    if a % 3 != 0:
        raise DomainError(f"{a} is not a multiple of 3")
    n, b = split_three(a)
    q = tuple((3 ** (n - i) * b << (2 * i + 1)) + 1 for i in range(1, n + 1))
    f = tuple((3 ** (n - i) * b << (2 * i + 2)) + 1 for i in range(1, n + 1))
    q_actual = _reverse_prefix(2 * a + 1, n)
    f_actual = _reverse_prefix(4 * a + 1, n)
    if b % 3 == 1:
        branch, terminal_ok, parity = "q", q[-1] % 3 == 0, n % 2 == 1
    else:
        branch, terminal_ok, parity = "f", f[-1] % 3 == 0, n % 2 == 0
    return ThreeAdicReport(a, n, b, q, f, q_actual, f_actual, branch, terminal_ok, parity)


@dataclass(frozen=True)
class CollabReport:
    a: int
    class_mod3: int
    provable_convergers: tuple[int, ...]
    witness: int
    k: int
    relations_checked: bool
    failures: tuple[str, ...] = ()


def collaborative_convergence(a: int) -> CollabReport:
    """Which of a, 2a+1, 4a+1 provably reverse-converges, with its witness.

    The p-trace of ``a`` is followed only while it strictly decreases, so no
    budget is involved.  Each claim is confirmed against the actual reverse
    trace of the claimed converger.
    """
    require_odd(a)
    cls = a % 3
    fails: list[str] = []
    if cls == 0:
        rep = three_adic_reverse(a)
        if not rep.matches:
            fails.append("three-adic prediction mismatch")
        if rep.branch == "q":
            start, witness = 2 * a + 1, rep.q[-1]
        else:
            start, witness = 4 * a + 1, rep.f[-1]
        k = rep.n
        steps = rep.n
    else:
        # a = 1 mod 3 starts the scan at p_1; a = 2 mod 3 at p_0
        ps = [a]
        p = a
        if cls == 1:
            p = (4 * a - 1) // 3
            ps.append(p)
        while p % 3 == 2:
            p = (2 * p - 1) // 3
            ps.append(p)
        k = len(ps) - 1
        partner = 4 * a + 1 if cls == 1 else 2 * a + 1
        name = "f" if cls == 1 else "q"
        lo = 1 if cls == 1 else 0
        partner_terms = (partner,) + _reverse_prefix(partner, k + 1)
        for i in range(lo, k + 1):
            if i >= len(partner_terms) or partner_terms[i] != 2 * ps[i] + 1:
                fails.append(f"{name}_{i} != 2p_{i}+1")
        if p % 3 == 0:
            start, witness, steps = a, p, k
            expect = 8 * (p // 3) + 1
            if len(partner_terms) <= k + 1 or partner_terms[k + 1] != expect:
                fails.append(f"{name}_{k + 1} != 2^3(p_{k}/3)+1")
        else:
            start, witness, steps = partner, 2 * p + 1, k
            if witness % 3 != 0:
                fails.append(f"{name}_{k} not a multiple of 3")

    trace = reverse_odd_trace(start, steps + 1)
    if trace.status is ReverseStatus.BUDGET_EXHAUSTED or trace.converged_value != witness:
        fails.append(f"reverse trace of {start} does not stop at {witness}")
    return CollabReport(a, cls, (start,), witness, k, not fails, tuple(fails))
