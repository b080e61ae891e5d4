"""Diagonal arrays of odd numbers.

For ``n != 1 mod 3`` the array has top row ``u_0 = 4n + 1``,
``u_i = 2 u_{i-1} + 1``; diagonal ``v_{k,k} = 3 v_{k-1,k-1} + 2``; and rows
``v_{i,j} = 2 v_{i,j-1} + 1`` to the right of the diagonal.  Column j lists
the first odd terms of the Collatz trace of ``u_j``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from collatznet.core import DEFAULT_BUDGET, DomainError, odd_successor, require_odd
from collatznet.decomposition import jump_from
from collatznet.equivalence import merge_within
from collatznet.reverse import first_non_two_mod3

DEFAULT_ROWS = 8
DEFAULT_COLS = 13


@dataclass(frozen=True)
class DiagonalArray:
    n: int
    rows: int
    cols: int
    u: tuple[int, ...]
    v: dict = field(compare=False, repr=False)

    def cell(self, i: int, j: int) -> int:
        return self.u[j] if i == 0 else self.v[i, j]

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.cell(i, i) for i in range(min(self.rows, self.cols)))


def _check_n(n: int) -> None:
    if n < 0 or n % 3 == 1:
        raise DomainError(f"diagonal arrays need n >= 0 with n != 1 mod 3, got {n}")


def build_array(n: int, rows: int = DEFAULT_ROWS, cols: int = DEFAULT_COLS) -> DiagonalArray:
    _check_n(n)
    if rows < 1 or rows > cols:
        raise DomainError(f"need 1 <= rows <= cols, got {rows}x{cols}")
    u = [4 * n + 1]
    for _ in range(1, cols):
        u.append(2 * u[-1] + 1)
    v = {}
    diag = u[0]
    for i in range(1, rows):
        diag = 3 * diag + 2
        x = v[i, i] = diag
        for j in range(i + 1, cols):
            x = v[i, j] = 2 * x + 1
    return DiagonalArray(n, rows, cols, tuple(u), v)


def array_cell(n: int, i: int, j: int) -> int:
    """Single cell ``(i, j)`` of the array for ``n`` without building the window."""
    _check_n(n)
    if j < i:
        raise DomainError(f"cell ({i}, {j}) lies left of the diagonal")
    x = 4 * n + 1
    if i == 0:
        return ((x + 1) << j) - 1
    for _ in range(i):
        x = 3 * x + 2
    return ((x + 1) << (j - i)) - 1


# -- merge targets ---------------------------------------------------------


@dataclass(frozen=True)
class MergeTarget:
    n: int
    i: int
    diagonal_value: int
    value: int
    congruent_1_mod_3: bool
    merged: bool


def merge_target(arr: DiagonalArray, i: int, budget: int = DEFAULT_BUDGET) -> MergeTarget:
    """The smaller ``1 mod 3`` partner ``t_i`` of diagonal cell ``v_{i,i}``.

    Even n pairs diagonal cells (2k, 2k+1) on the successor of ``v_{2k,2k}``;
    odd n leaves ``t_0 = u_0`` alone and pairs (2k-1, 2k).  For odd n with
    ``u_0 = 0 mod 3`` the value ``t_0`` cannot be ``1 mod 3``; that shows up
    as ``congruent_1_mod_3 = False``.
    """
    if not 0 <= i < min(arr.rows, arr.cols):
        raise DomainError(f"diagonal index {i} outside the {arr.rows}x{arr.cols} window")
    if arr.n % 2 == 0:
        src = i - i % 2
    elif i == 0:
        src = None
    else:
        src = i - 1 if i % 2 == 0 else i
    if src is None:
        value = arr.u[0]
    else:
        value = odd_successor(arr.cell(src, src)).dst
    diag = arr.cell(i, i)
    report = merge_within(diag, value, budget)
    return MergeTarget(arr.n, i, diag, value, value % 3 == 1, report.merged)


def smaller_partner(n: int) -> int | None:
    """A number below ``u_0`` that is not 2 mod 3 and whose trace merges with u_0's."""
    _check_n(n)
    if n == 0:
        return None
    u0 = 4 * n + 1
    if n % 2 == 0:
        return odd_successor(u0).dst
    if n % 3 == 0:
        return n
    return first_non_two_mod3(n)[1]


# -- property verification -------------------------------------------------

PROPERTY_NAMES = {
    1: "residues mod 3",
    2: "residues mod 4",
    3: "u alternates 0/1 mod 3",
    4: "u rows are jumps from u_0/3 or u_1/3",
    5: "columns are odd-trace prefixes",
    6: "skew relation v_ij = 3v_(i-1)(j-1)+2",
    7: "diagonal successors and 4a+1 pairing",
    8: "consecutive u merge by parity",
    9: "u_0 merges with a smaller non-2-mod-3 number",
}


@dataclass
class ArrayReport:
    n: int
    violations: dict[int, list[str]]
    deviations: list[str]
    budget_exhausted: bool = False

    @property
    def passed(self) -> bool:
        return not any(self.violations.values())

    def failed_properties(self) -> list[int]:
        return [p for p, v in self.violations.items() if v]


def verify_array_properties(arr: DiagonalArray, budget: int = DEFAULT_BUDGET) -> ArrayReport:
    n, rows, cols, u = arr.n, arr.rows, arr.cols, arr.u
    bad: dict[int, list[str]] = {p: [] for p in PROPERTY_NAMES}
    dev: list[str] = []
    exhausted = False
    cells = [(i, j) for i in range(1, rows) for j in range(i, cols)]

    # 1
    for j, x in enumerate(u):
        if x % 3 == 2:
            bad[1].append(f"u_{j}={x}")
    for i, j in cells:
        if arr.v[i, j] % 3 != 2:
            bad[1].append(f"v_{i},{j}={arr.v[i, j]}")

    # 2
    for j, x in enumerate(u):
        if (x % 4 == 1) != (j == 0):
            bad[2].append(f"u_{j}={x}")
    for i, j in cells:
        if (arr.v[i, j] % 4 == 1) != (i == j):
            bad[2].append(f"v_{i},{j}={arr.v[i, j]}")

    # 3
    for j in range(cols - 1):
        if u[j] % 3 == 1 and u[j + 1] % 3 != 0 or u[j] % 3 == 0 and u[j + 1] % 3 != 1:
            bad[3].append(f"u_{j}={u[j]}")

    # 4: the u_1 = 0 mod 3 case uses u_(2i+1) = 3 j_i, u_(2i+2) = 6 j_i + 1
    offset = 0 if u[0] % 3 == 0 else 1
    base = u[offset] // 3
    for idx in range(offset, cols):
        h, odd_pos = divmod(idx - offset, 2)
        jump = jump_from(base, h)
        want = 6 * jump + 1 if odd_pos else 3 * jump
        if u[idx] != want:
            bad[4].append(f"u_{idx}={u[idx]}")
    if offset == 1 and u[0] != 6 * base + 1:
        dev.append(f"property 4 as literally indexed fails at u_0={u[0]} (6*{base}+1={6 * base + 1})")

    # 5
    for j in range(1, cols):
        for i in range(min(j, rows - 1)):
            step = odd_successor(arr.cell(i, j))
            if step.halvings != 1 or step.dst != arr.cell(i + 1, j):
                bad[5].append(f"col {j} row {i}")

    # 6
    for i, j in cells:
        if arr.v[i, j] != 3 * arr.cell(i - 1, j - 1) + 2:
            bad[6].append(f"v_{i},{j}")

    # 7
    diag = arr.diagonal
    first = 0 if n % 2 == 0 else 1
    for s in range(first, len(diag), 2):
        a = odd_successor(diag[s]).dst
        if a % 3 != 1:
            bad[7].append(f"a_{s},{s}={a} not 1 mod 3")
        if s + 1 < len(diag):
            if diag[s + 1] != 4 * a + 1:
                bad[7].append(f"v_{s + 1},{s + 1} != 4a_{s},{s}+1")
            # the fixed point 1 -> 1 cannot be strictly smaller than itself
            if not (a < diag[s + 1] and (a < diag[s] or diag[s] == 1)):
                bad[7].append(f"a_{s},{s}={a} not below its diagonal pair")
    if n % 2 == 1 and len(diag) > 1:
        if diag[1] != (odd_successor(diag[0]).dst << odd_successor(diag[0]).halvings) + 1:
            bad[7].append("v_1,1 != 2^r a_0,0 + 1")

    # 8
    start = 1 if n % 2 == 1 else 0
    for s in range(start, cols - 1, 2):
        rep = merge_within(u[s], u[s + 1], budget)
        if not rep.merged:
            exhausted |= rep.budget_exhausted
            bad[8].append(f"u_{s}, u_{s + 1}")

    # 9
    partner = smaller_partner(n)
    if partner is not None:
        rep = merge_within(u[0], partner, budget)
        if not (partner < u[0] and partner % 3 != 2 and rep.merged):
            exhausted |= rep.budget_exhausted
            bad[9].append(f"partner {partner}")

    if n % 2 == 1 and u[0] % 3 == 0:
        dev.append(f"t_0 = u_0 = {u[0]} is 0 mod 3, not 1 mod 3")
    return ArrayReport(n, bad, dev, exhausted)


# -- locate ----------------------------------------------------------------


@dataclass(frozen=True)
class LocateResult:
    n: int
    i: int
    j: int
    value: int


def locate(a: int) -> LocateResult:
    """Array and cell holding the odd number ``a``.

    Reverse steps ``p -> (2p - 1) / 3`` climb column j to the top row; then
    ``x -> (x - 1) / 2`` walks left along the top row to ``u_0 = 4n + 1``.
    """
    require_odd(a)
    x, i = a, 0
    while x % 3 == 2:
        x = (2 * x - 1) // 3
        i += 1
    j = 0
    while x % 4 == 3:
        x = (x - 1) >> 1
        j += 1
    return LocateResult((x - 1) // 4, i, j, a)


# -- rendering -------------------------------------------------------------


def render_array(arr: DiagonalArray, budget: int = DEFAULT_BUDGET) -> str:
    lines = [f"n={arr.n}", "u_i: " + " ".join(map(str, arr.u))]
    for i in range(1, arr.rows):
        row = (arr.v[i, j] for j in range(i, arr.cols))
        lines.append(f"v_{{{i},i}}: " + " ".join(map(str, row)))
    diag = arr.diagonal
    lines.append("v_{i,i}: " + " ".join(map(str, diag)))
    targets = (merge_target(arr, i, budget).value for i in range(len(diag)))
    lines.append("t_i: " + " ".join(map(str, targets)))
    return "\n".join(lines) + "\n"


def array_to_json(arr: DiagonalArray, budget: int = DEFAULT_BUDGET) -> dict:
    diag = arr.diagonal
    return {
        "n": str(arr.n),
        "rows": arr.rows,
        "cols": arr.cols,
        "u": [str(x) for x in arr.u],
        "v": [[str(arr.v[i, j]) for j in range(i, arr.cols)] for i in range(1, arr.rows)],
        "diagonal": [str(x) for x in diag],
        "t": [str(merge_target(arr, i, budget).value) for i in range(len(diag))],
    }


def array_from_json(data: dict | str) -> DiagonalArray:
    if isinstance(data, str):
        data = json.loads(data)
    rows, cols = data["rows"], data["cols"]
    v = {}
    for i, row in enumerate(data["v"], start=1):
        for j, x in enumerate(row, start=i):
            v[i, j] = int(x)
    return DiagonalArray(int(data["n"]), rows, cols, tuple(int(x) for x in data["u"]), v)
