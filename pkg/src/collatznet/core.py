"""Forward Collatz iteration on exact integers.

Traces stop at the first 1; the trailing 4, 2, 1 cycle is never emitted.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

DEFAULT_BUDGET = 100_000


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


def default_budget() -> int:
    raw = os.environ.get("COLLATZNET_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    return int(raw)


def require_odd(x: int, name: str = "a") -> None:
    if x < 1 or x % 2 == 0:
        raise DomainError(f"{name} must be an odd positive integer, got {x}")


def nu2(x: int) -> int:
    """2-adic valuation of ``x`` (x >= 1)."""
    if x < 1:
        raise DomainError(f"nu2 is undefined for {x}")
    return (x & -x).bit_length() - 1


def collatz_step(x: int) -> int:
    if x < 1:
        raise DomainError(f"collatz_step is undefined for {x}")
    return 3 * x + 1 if x & 1 else x >> 1


def collatz_trace(a: int, max_steps: int = DEFAULT_BUDGET) -> tuple[list[int], bool]:
    """Raw Collatz sequence from ``a`` to the first 1.

    Returns ``(terms, truncated)``; when truncated, ``terms`` holds the first
    ``max_steps + 1`` values.
    """
    if a < 1:
        raise DomainError(f"collatz_trace needs a >= 1, got {a}")
    terms = [a]
    x = a
    for _ in range(max_steps):
        if x == 1:
            return terms, False
        x = 3 * x + 1 if x & 1 else x >> 1
        terms.append(x)
    return terms, x != 1


@dataclass(frozen=True)
class OddStep:
    src: int
    dst: int
    halvings: int

    def holds(self) -> bool:
        return (
            self.halvings >= 1
            and self.dst & 1 == 1
            and 3 * self.src + 1 == self.dst << self.halvings
        )


@dataclass(frozen=True)
class OddTrace:
    terms: tuple[int, ...]
    steps: tuple[OddStep, ...]
    truncated: bool

    def __len__(self) -> int:
        return len(self.terms)


def odd_successor(a: int) -> OddStep:
    require_odd(a)
    x = 3 * a + 1
    k = (x & -x).bit_length() - 1
    return OddStep(a, x >> k, k)


def _next_odd(a: int) -> int:
    x = 3 * a + 1
    return x >> ((x & -x).bit_length() - 1)


def odd_trace(a: int, max_odd_steps: int = DEFAULT_BUDGET) -> OddTrace:
    """Odd terms of the Collatz sequence of odd ``a`` up to the first 1."""
    require_odd(a)
    terms = [a]
    steps = []
    x = a
    for _ in range(max_odd_steps):
        if x == 1:
            break
        step = odd_successor(x)
        steps.append(step)
        x = step.dst
        terms.append(x)
    return OddTrace(tuple(terms), tuple(steps), x != 1)


def odd_terms(a: int, max_odd_steps: int = DEFAULT_BUDGET) -> tuple[list[int], bool]:
    """Lightweight :func:`odd_trace` returning only the values."""
    terms = [a]
    x = a
    for _ in range(max_odd_steps):
        if x == 1:
            return terms, False
        x = _next_odd(x)
        terms.append(x)
    return terms, x != 1


def odd_iterates(a: int, count: int) -> list[int]:
    """``a_0 .. a_count`` of the odd iteration, continuing 1 -> 1 past the end.

    Indexed access used by the coupling and prediction checks, where a
    predictions refer to ``a_i`` for i beyond the point the trace hits 1.
    """
    require_odd(a)
    out = [a]
    x = a
    for _ in range(count):
        x = _next_odd(x)
        out.append(x)
    return out
