"""Exact Collatz odd-subsequence machinery: jumps, merging, reverse traces,
the 24t+21 reduction and the diagonal-array network."""

from collatznet.core import (
    DomainError,
    OddStep,
    OddTrace,
    collatz_step,
    collatz_trace,
    nu2,
    odd_iterates,
    odd_successor,
    odd_trace,
)

__all__ = [
    "DomainError",
    "OddStep",
    "OddTrace",
    "collatz_step",
    "collatz_trace",
    "nu2",
    "odd_iterates",
    "odd_successor",
    "odd_trace",
]

__version__ = "0.1.0"
