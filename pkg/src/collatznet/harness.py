"""Range verification of every identity and claim, with golden-table replay.

Each suite walks an inclusive integer range, keeps only the inputs its
predicate applies to, and tallies passes, failures (with witnesses) and
budget exhaustions.  Known slips in the source material are tallied as
*expected deviations*: they do not fail a suite, but a deviation outside
its expected class does.
"""

from __future__ import annotations

import enum
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources

from collatznet.core import DEFAULT_BUDGET, collatz_trace, odd_terms
from collatznet.decomposition import jump_from, odd_jump_base, two_adic_decompose
from collatznet.equivalence import (
    are_equivalent,
    coupling_analysis,
    k1_merge_alternative,
    kequals2_next,
    merge_within,
    predict_odd_iterates,
    render_coupling,
    second_odd,
)
from collatznet.network import (
    DEFAULT_COLS,
    DEFAULT_ROWS,
    array_cell,
    build_array,
    locate,
    render_array,
    verify_array_properties,
)
from collatznet.reduction import (
    StepCase,
    b_trace,
    b_zero,
    closed_form_next_b,
    render_table,
    representative_merge,
)
from collatznet.reverse import collaborative_convergence, three_adic_reverse

MAX_EXAMPLES = 10


class SuiteId(str, enum.Enum):
    EQUIV_4A1 = "EQUIV_4A1"
    COUPLING = "COUPLING"
    PREDICT_ITERATES = "PREDICT_ITERATES"
    REVERSE_COLLAB = "REVERSE_COLLAB"
    THREE_ADIC = "THREE_ADIC"
    REDUCTION_21 = "REDUCTION_21"
    REDUCTION_MERGE = "REDUCTION_MERGE"
    REPRESENTATIVE_MERGE = "REPRESENTATIVE_MERGE"
    NETWORK_PROPS = "NETWORK_PROPS"
    LOCATE_ROUNDTRIP = "LOCATE_ROUNDTRIP"
    GOLDEN_TABLES = "GOLDEN_TABLES"


@dataclass(frozen=True)
class SuiteSpec:
    suite_id: SuiteId
    lo: int
    hi: int
    budget: int = DEFAULT_BUDGET
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "suite_id", SuiteId(self.suite_id))
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass
class SuiteReport:
    suite_id: SuiteId
    checked: int = 0
    passed: int = 0
    failed: list[dict] = field(default_factory=list)
    budget_exhausted: list[int] = field(default_factory=list)
    deviations: dict[str, dict] = field(default_factory=dict)
    metrics: dict[str, int] = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failed and not self.budget_exhausted

    # -- tallying ----------------------------------------------------------

    def pass_(self) -> None:
        self.checked += 1
        self.passed += 1

    def fail(self, x: int, predicate: str, **witness) -> None:
        self.checked += 1
        w = {key: str(val) for key, val in witness.items()}
        self.failed.append({"input": str(x), "predicate": predicate, "witness": w})

    def exhaust(self, x: int) -> None:
        self.checked += 1
        self.budget_exhausted.append(x)

    def verdict(self, x: int, problems: list[str], **witness) -> None:
        if problems:
            self.fail(x, "; ".join(problems), **witness)
        else:
            self.pass_()

    def deviate(self, name: str, x: int) -> None:
        entry = self.deviations.setdefault(name, {"count": 0, "examples": []})
        entry["count"] += 1
        if len(entry["examples"]) < MAX_EXAMPLES:
            entry["examples"].append(str(x))

    def bump(self, name: str, by: int = 1) -> None:
        self.metrics[name] = self.metrics.get(name, 0) + by

    # -- combining ---------------------------------------------------------

    def merge(self, other: SuiteReport) -> SuiteReport:
        """Fold ``other`` (the next partition) into this report."""
        self.checked += other.checked
        self.passed += other.passed
        self.failed.extend(other.failed)
        self.budget_exhausted.extend(other.budget_exhausted)
        for name, entry in other.deviations.items():
            mine = self.deviations.setdefault(name, {"count": 0, "examples": []})
            mine["count"] += entry["count"]
            room = MAX_EXAMPLES - len(mine["examples"])
            mine["examples"].extend(entry["examples"][:room])
        for name, val in other.metrics.items():
            self.bump(name, val)
        return self

    def to_json(self, with_elapsed: bool = True) -> dict:
        out = {
            "suite_id": self.suite_id.value,
            "counts": {
                "checked": self.checked,
                "passed": self.passed,
                "failed": len(self.failed),
                "budget_exhausted": len(self.budget_exhausted),
            },
            "failures": self.failed,
            "budget_exhausted": [str(x) for x in self.budget_exhausted],
            "deviations": [
                {"name": name, "count": e["count"], "examples": e["examples"]}
                for name, e in sorted(self.deviations.items())
            ],
            "metrics": dict(sorted(self.metrics.items())),
        }
        if with_elapsed:
            out["elapsed"] = round(self.elapsed, 3)
        return out


# -- suites ------------------------------------------------------------------
# Each takes (report, lo, hi, budget) and tallies inputs in [lo, hi].


def _odds(lo: int, hi: int, start: int = 1):
    first = max(lo, start)
    first += 1 - first % 2
    return range(first, hi + 1, 2)


def _equiv_4a1(rep, lo, hi, budget):
    for a in _odds(lo, hi):
        if are_equivalent(a, 4 * a + 1):
            rep.pass_()
        else:
            rep.fail(a, "second_odd(a) == second_odd(4a+1)",
                     left=second_odd(a), right=second_odd(4 * a + 1))


def _coupling(rep, lo, hi, budget):
    for n0 in _odds(lo, hi):
        res = coupling_analysis(n0, budget)
        if res.budget_exhausted:
            rep.exhaust(n0)
            continue
        rep.verdict(n0, list(res.failures), r=res.r, k=res.k)
        rep.bump(f"case_{res.merge_case.value}")
        # k = 1 observation: which of n, 2a+1 the trace of a meets first
        if n0 > 1 and n0 % 4 == 3:
            rep.bump(f"k1_first_merge_{k1_merge_alternative(n0, budget)}")


def _predict_iterates(rep, lo, hi, budget):
    for a in _odds(lo, hi, 5):
        if a % 4 != 1:
            continue
        if a % 8 == 5:
            if kequals2_next(a) == second_odd(a):
                rep.pass_()
            else:
                rep.fail(a, "kequals2_next(a) == second_odd(a)", got=kequals2_next(a))
            rep.bump("k_eq_2")
            continue
        pred = predict_odd_iterates(a)
        rep.bump("k_gt_2")
        problems = []
        if pred.predicted != pred.actual:
            problems.append("predicted iterates differ from the odd trace")
        if pred.merge_ok is False:
            problems.append(f"no merge with 3^(j-1)n = {pred.merge_partner}")
        rep.verdict(a, problems, k=pred.k, n=pred.n)


def _reverse_collab(rep, lo, hi, budget):
    for a in _odds(lo, hi):
        res = collaborative_convergence(a)
        problems = list(res.failures)
        if not res.provable_convergers:
            problems.append("no provable converger")
        rep.verdict(a, problems, witness=res.witness)
        rep.bump(f"class_{res.class_mod3}")


def _three_adic(rep, lo, hi, budget):
    for a in _odds(lo, hi, 3):
        if a % 3:
            continue
        res = three_adic_reverse(a)
        problems = []
        if not res.matches:
            problems.append("predicted q_i/f_i differ from reverse traces")
        if not res.terminal_ok:
            problems.append(f"{res.branch}_n not a multiple of 3")
        rep.verdict(a, problems, n=res.n, b=res.b)
        if not res.proof_parity_holds:
            rep.deviate("terminal claim holds without the proof's parity condition on n", a)


def _b_jump_of_a0(a: int, b: int) -> bool:
    rem = a % 3
    if rem == 0:
        return b == jump_from(a, 3)
    if rem == 1:
        return b == jump_from(a, 2)
    return b == jump_from(2 * a + 1, 1)


def _reduction_21(rep, lo, hi, budget):
    for a in _odds(lo, hi, 3):
        rows = b_trace(a, budget)
        if rows[-1].a != 1:
            rep.exhaust(a)
            continue
        problems = []
        if not _b_jump_of_a0(a, rows[0].b):
            problems.append("b_0 is not the expected jump")
        for i, row in enumerate(rows):
            if row.b % 24 != 21 or (row.step and not row.step.residues_ok()):
                problems.append(f"b_{i}={row.b} not 21 mod 24")
            if i == 0:
                continue
            prev = rows[i - 1].a
            closed = closed_form_next_b(prev)
            if closed is not None and closed != row.b:
                problems.append(f"closed form for b_{i}: {closed} != {row.b}")
            # b_i is a jump of height 1 or 2 from a_i
            case = row.step.case
            if case in (StepCase.MOD4_3, StepCase.K_EQ_2_R1):
                want = jump_from(row.a, 1)
            else:
                want = jump_from(row.a, 2)
            if row.b != want:
                problems.append(f"b_{i} != jump from a_{i} ({case.value})")
        rep.verdict(a, problems)


def _reduction_merge(rep, lo, hi, budget):
    for a in _odds(lo, hi, 3):
        b = b_zero(a)
        res = merge_within(a, b, budget)
        if res.budget_exhausted:
            rep.exhaust(a)
            continue
        if res.merged:
            rep.pass_()
        else:
            rep.fail(a, "a merges with b_0(a)", b=b)
        cls = a % 3
        if are_equivalent(a, b):
            rep.bump(f"strict_equiv_pass_mod3_{cls}")
        else:
            rep.bump(f"strict_equiv_fail_mod3_{cls}")
            if cls == 2:
                rep.deviate("b_0(a) not strictly equivalent to a (a = 2 mod 3)", a)
            else:
                rep.fail(a, "strict equivalence failed outside a = 2 mod 3", b=b)


def _representative_merge(rep, lo, hi, budget):
    for t in range(max(lo, 0), hi + 1):
        res = representative_merge(t, budget)
        if res.report.budget_exhausted:
            rep.exhaust(t)
        elif res.report.merged:
            rep.pass_()
        else:
            rep.fail(t, "24t+21 merges with its target", target=res.target)


def _network_props(rep, lo, hi, budget):
    for n in range(max(lo, 0), hi + 1):
        if n % 3 == 1:
            continue
        res = verify_array_properties(build_array(n, DEFAULT_ROWS, DEFAULT_COLS), budget)
        if res.budget_exhausted:
            rep.exhaust(n)
            continue
        problems = [
            f"property {p}: {', '.join(res.violations[p][:3])}" for p in res.failed_properties()
        ]
        rep.verdict(n, problems)
        for text in res.deviations:
            name = text.split(" at ")[0] if text.startswith("property 4") else "t_0 = u_0 is 0 mod 3"
            rep.deviate(name, n)


def _locate_roundtrip(rep, lo, hi, budget):
    for a in _odds(lo, hi):
        loc = locate(a)
        problems = []
        if loc.n % 3 == 1:
            problems.append("n = 1 mod 3")
        if loc.j < loc.i:
            problems.append("cell left of the diagonal")
        elif array_cell(loc.n, loc.i, loc.j) != a:
            problems.append("cell does not hold a")
        rep.verdict(a, problems, n=loc.n, i=loc.i, j=loc.j)


def golden_text(name: str) -> str:
    return resources.files("collatznet").joinpath("goldens", name).read_text()


def golden_renderings(budget: int = DEFAULT_BUDGET) -> dict[str, str]:
    """Freshly computed text for each golden file, keyed by file name."""
    seq, _ = collatz_trace(27, budget)
    odds, _ = odd_terms(27, budget)
    return {
        "example1_collatz_27.txt": " ".join(map(str, seq)) + "\n",
        "example2_odd_27.txt": " ".join(map(str, odds)) + "\n",
        "coupling_3.txt": render_coupling(coupling_analysis(3, budget), budget),
        "table_319.txt": render_table(319, budget),
        "network_n0.txt": render_array(build_array(0, 8, 13), budget),
        "network_n3.txt": render_array(build_array(3, 7, 12), budget),
    }


def _golden_tables(rep, lo, hi, budget):
    if lo > hi:
        return
    for idx, (name, text) in enumerate(sorted(golden_renderings(budget).items())):
        if text == golden_text(name):
            rep.pass_()
        else:
            rep.fail(idx, f"{name} differs from golden")


SUITES = {
    SuiteId.EQUIV_4A1: _equiv_4a1,
    SuiteId.COUPLING: _coupling,
    SuiteId.PREDICT_ITERATES: _predict_iterates,
    SuiteId.REVERSE_COLLAB: _reverse_collab,
    SuiteId.THREE_ADIC: _three_adic,
    SuiteId.REDUCTION_21: _reduction_21,
    SuiteId.REDUCTION_MERGE: _reduction_merge,
    SuiteId.REPRESENTATIVE_MERGE: _representative_merge,
    SuiteId.NETWORK_PROPS: _network_props,
    SuiteId.LOCATE_ROUNDTRIP: _locate_roundtrip,
    SuiteId.GOLDEN_TABLES: _golden_tables,
}


def _run_chunk(args: tuple[str, int, int, int]) -> SuiteReport:
    suite_id, lo, hi, budget = args
    sid = SuiteId(suite_id)
    rep = SuiteReport(sid)
    SUITES[sid](rep, lo, hi, budget)
    return rep


def partition(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    """Split [lo, hi] into at most ``parts`` contiguous non-empty pieces."""
    if lo > hi:
        return []
    size = hi - lo + 1
    parts = max(1, min(parts, size))
    step, extra = divmod(size, parts)
    out, start = [], lo
    for p in range(parts):
        end = start + step + (1 if p < extra else 0) - 1
        out.append((start, end))
        start = end + 1
    return out


def run_suite(spec: SuiteSpec) -> SuiteReport:
    t0 = time.perf_counter()
    if spec.suite_id is SuiteId.GOLDEN_TABLES:
        chunks = [(spec.lo, spec.hi)] if spec.lo <= spec.hi else []
    else:
        chunks = partition(spec.lo, spec.hi, spec.workers)
    jobs = [(spec.suite_id.value, lo, hi, spec.budget) for lo, hi in chunks]
    report = SuiteReport(spec.suite_id)
    if spec.workers == 1 or len(jobs) <= 1:
        parts = map(_run_chunk, jobs)
        for part in parts:
            report.merge(part)
    else:
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            for part in pool.map(_run_chunk, jobs):
                report.merge(part)
    report.elapsed = time.perf_counter() - t0
    return report


def run_all(lo: int, hi: int, budget: int = DEFAULT_BUDGET, workers: int = 1) -> list[SuiteReport]:
    return [run_suite(SuiteSpec(sid, lo, hi, budget, workers)) for sid in SuiteId]
