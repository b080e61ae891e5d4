"""Base-2 and base-4 decompositions of odd numbers.

An odd ``a > 1`` is ``2^k * n + 1`` with ``n`` odd.  A *jump from p of
height d* is ``4^d * p + (4^d - 1) / 3``; the height is maximal when
``p`` is not itself ``1 mod 4``.
"""

from __future__ import annotations

from dataclasses import dataclass

from collatznet.core import DomainError, nu2, require_odd


@dataclass(frozen=True)
class TwoAdicForm:
    a: int
    k: int
    n: int

    def value(self) -> int:
        return (self.n << self.k) + 1


@dataclass(frozen=True)
class JumpForm:
    a: int
    p: int
    d: int
    maximal: bool

    def value(self) -> int:
        return jump_from(self.p, self.d)


def two_adic_decompose(a: int) -> TwoAdicForm:
    require_odd(a)
    if a == 1:
        raise DomainError("1 has no form 2^k * n + 1 with n odd")
    k = nu2(a - 1)
    return TwoAdicForm(a, k, (a - 1) >> k)


def jump_from(p: int, d: int) -> int:
    if d < 0:
        raise DomainError(f"jump height must be >= 0, got {d}")
    q = 1 << (2 * d)
    return q * p + (q - 1) // 3


def max_jump_base(a: int) -> JumpForm:
    """Strip ``x -> (x - 1) / 4`` while ``x = 1 mod 4``.

    The base may be even, or 0 (``a = 21`` gives ``p = 0, d = 3``).
    """
    if a < 1 or a % 4 != 1:
        raise DomainError(f"max_jump_base needs a = 1 mod 4, got {a}")
    x, d = a, 0
    while x % 4 == 1:
        x = (x - 1) >> 2
        d += 1
    return JumpForm(a, x, d, True)


def odd_jump_base(a: int) -> JumpForm:
    """Deepest *odd* base ``p`` that ``a`` is a jump from.

    Strips ``x -> (x - 1) / 4`` only while the result stays odd, so the
    returned base is not itself a jump from an odd number.  Differs from
    :func:`max_jump_base` when the chain passes through an even value,
    e.g. ``3077 = 4*769 + 1`` and ``769 = 4*192 + 1`` give base 769 here.
    """
    if a < 1 or a % 4 != 1:
        raise DomainError(f"odd_jump_base needs a = 1 mod 4, got {a}")
    x, d = a, 0
    while x % 8 == 5:
        x = (x - 1) >> 2
        d += 1
    return JumpForm(a, x, d, x % 4 != 1)


def jump_identity_check(p: int, d: int) -> bool:
    return 3 * jump_from(p, d) + 1 == (1 << (2 * d)) * (3 * p + 1)
