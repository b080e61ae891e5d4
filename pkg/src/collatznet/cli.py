"""Command-line front end.

Exit codes: 0 success, 1 counterexample or failed check, 2 budget exhausted
where a definite answer was needed, 3 usage or parse error.

CSV columns per verb:
  seq        index,value
  odds       index,value,halvings
  reverse    index,value
  couple     index,n,m,l
  decompose  a,k,n,p,d,odd_p,odd_d
  reduce     a,b0,t
  table      a,b,d,3d,e,3e
  network    i,j,value
  locate     a,n,i,j
  target     n,i,diagonal,value,congruent_1_mod_3,merged
  verify     suite_id,checked,passed,failed,budget_exhausted
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from collatznet.core import DomainError, collatz_trace, default_budget, odd_trace
from collatznet.decomposition import max_jump_base, odd_jump_base, two_adic_decompose
from collatznet.equivalence import coupling_analysis, render_coupling
from collatznet.harness import SuiteId, SuiteSpec, run_all, run_suite
from collatznet.network import (
    PROPERTY_NAMES,
    array_to_json,
    build_array,
    locate,
    merge_target,
    render_array,
    verify_array_properties,
)
from collatznet.reduction import b_trace, companion_columns, reduce_to_residue21, render_table
from collatznet.reverse import ReverseStatus, reverse_odd_trace

EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def _range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}")
    return _int(lo), _int(hi)


class Output:
    """One command's result in all three formats."""

    def __init__(self, data: dict | list, text: str, header: list[str], rows: list[list]):
        self.data, self.text, self.header, self.rows = data, text, header, rows

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.data, indent=2) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(self.header)
            w.writerows(self.rows)
            return buf.getvalue()
        return self.text if self.text.endswith("\n") else self.text + "\n"


def _strs(xs) -> list[str]:
    return [str(x) for x in xs]


def cmd_seq(args):
    terms, truncated = collatz_trace(args.a, args.max_steps)
    data = {"start": str(args.a), "terms": _strs(terms), "truncated": truncated}
    out = Output(data, " ".join(_strs(terms)), ["index", "value"], list(enumerate(terms)))
    return out, EXIT_BUDGET if truncated else EXIT_OK


def cmd_odds(args):
    tr = odd_trace(args.a, args.budget)
    halvings = [s.halvings for s in tr.steps]
    data = {
        "start": str(args.a),
        "terms": _strs(tr.terms),
        "halvings": halvings,
        "truncated": tr.truncated,
    }
    rows = [[i, x, halvings[i] if i < len(halvings) else ""] for i, x in enumerate(tr.terms)]
    out = Output(data, " ".join(_strs(tr.terms)), ["index", "value", "halvings"], rows)
    return out, EXIT_BUDGET if tr.truncated else EXIT_OK


def cmd_reverse(args):
    tr = reverse_odd_trace(args.a, args.budget)
    cv = None if tr.converged_value is None else str(tr.converged_value)
    data = {"start": str(args.a), "terms": _strs(tr.terms), "status": tr.status.value,
            "converged_value": cv}
    text = " ".join(_strs(tr.terms)) + f"\nstatus: {tr.status.value}"
    out = Output(data, text, ["index", "value"], list(enumerate(tr.terms)))
    return out, EXIT_BUDGET if tr.status is ReverseStatus.BUDGET_EXHAUSTED else EXIT_OK


def cmd_couple(args):
    rep = coupling_analysis(args.n, args.budget)
    data = {
        "n0": str(rep.n0),
        "r": rep.r,
        "k": rep.k,
        "j": rep.j,
        "merge_case": rep.merge_case.value if rep.merge_case else None,
        "relations_verified": rep.relations_verified,
        "budget_exhausted": rep.budget_exhausted,
        "failures": list(rep.failures),
        "n": _strs(rep.n),
        "m": _strs(rep.m),
        "l": _strs(rep.l),
    }
    rows = [[i, x, y, z] for i, (x, y, z) in enumerate(zip(rep.n, rep.m, rep.l))]
    out = Output(data, render_coupling(rep, args.budget), ["index", "n", "m", "l"], rows)
    if rep.budget_exhausted:
        return out, EXIT_BUDGET
    return out, EXIT_OK if rep.relations_verified else EXIT_FAIL


def cmd_decompose(args):
    a = args.a
    data = {"a": str(a), "two_adic": None, "jump": None, "odd_jump": None}
    lines = []
    row = [a, "", "", "", "", "", ""]
    if a > 1:
        f = two_adic_decompose(a)
        data["two_adic"] = {"k": f.k, "n": str(f.n)}
        lines.append(f"{a} = 2^{f.k} * {f.n} + 1")
        row[1:3] = [f.k, f.n]
    if a % 4 == 1:
        jf = max_jump_base(a)
        oj = odd_jump_base(a)
        data["jump"] = {"p": str(jf.p), "d": jf.d}
        data["odd_jump"] = {"p": str(oj.p), "d": oj.d}
        lines.append(f"jump from {jf.p} of maximum height {jf.d}")
        lines.append(f"jump from odd {oj.p} of height {oj.d}")
        row[3:7] = [jf.p, jf.d, oj.p, oj.d]
    if not lines:
        lines.append(f"{a}: no decomposition")
    header = ["a", "k", "n", "p", "d", "odd_p", "odd_d"]
    return Output(data, "\n".join(lines), header, [row]), EXIT_OK


def cmd_reduce(args):
    b, t = reduce_to_residue21(args.a)
    data = {"b0": str(b), "t": str(t)}
    return Output(data, f"b0={b} t={t}", ["a", "b0", "t"], [[args.a, b, t]]), EXIT_OK


def cmd_table(args):
    rows = b_trace(args.a, args.budget)
    exhausted = rows[-1].a != 1
    data = {"start": str(args.a), "truncated": exhausted, "rows": []}
    csv_rows = []
    for row in rows:
        cols = companion_columns(row.a)
        data["rows"].append({"a": str(row.a), "b": str(row.b),
                             "d": cols[0], "3d": cols[1], "e": cols[2], "3e": cols[3]})
        csv_rows.append([row.a, row.b, *cols])
    text = render_table(args.a, args.budget)
    out = Output(data, text, ["a", "b", "d", "3d", "e", "3e"], csv_rows)
    return out, EXIT_BUDGET if exhausted else EXIT_OK


def cmd_network(args):
    arr = build_array(args.n, args.rows, args.cols)
    rep = verify_array_properties(arr, args.budget)
    data = array_to_json(arr, args.budget)
    data["properties"] = {str(p): rep.violations[p] for p in PROPERTY_NAMES}
    data["deviations"] = rep.deviations
    lines = [render_array(arr, args.budget).rstrip("\n")]
    if args.properties:
        for p, name in PROPERTY_NAMES.items():
            bad = rep.violations[p]
            lines.append(f"property {p} ({name}): " + ("ok" if not bad else "FAIL " + ", ".join(bad[:5])))
        lines.extend(f"deviation: {d}" for d in rep.deviations)
    rows = [[0, j, x] for j, x in enumerate(arr.u)]
    rows += [[i, j, arr.v[i, j]] for i in range(1, arr.rows) for j in range(i, arr.cols)]
    out = Output(data, "\n".join(lines), ["i", "j", "value"], rows)
    if rep.budget_exhausted:
        return out, EXIT_BUDGET
    return out, EXIT_OK if rep.passed else EXIT_FAIL


def cmd_locate(args):
    loc = locate(args.a)
    data = {"n": str(loc.n), "i": loc.i, "j": loc.j}
    text = f"n={loc.n} i={loc.i} j={loc.j}"
    return Output(data, text, ["a", "n", "i", "j"], [[args.a, loc.n, loc.i, loc.j]]), EXIT_OK


def cmd_target(args):
    arr = build_array(args.n, args.i + 1, args.i + 1)
    tg = merge_target(arr, args.i, args.budget)
    data = {
        "n": str(tg.n),
        "i": tg.i,
        "diagonal": str(tg.diagonal_value),
        "value": str(tg.value),
        "congruent_1_mod_3": tg.congruent_1_mod_3,
        "merged": tg.merged,
    }
    text = f"t_{tg.i} = {tg.value}"
    if not tg.congruent_1_mod_3:
        text += " (not 1 mod 3)"
    row = [tg.n, tg.i, tg.diagonal_value, tg.value, tg.congruent_1_mod_3, tg.merged]
    out = Output(data, text, ["n", "i", "diagonal", "value", "congruent_1_mod_3", "merged"], [row])
    return out, EXIT_OK if tg.merged else EXIT_BUDGET


def cmd_verify(args):
    lo, hi = args.range
    if args.suite == "all":
        reports = run_all(lo, hi, args.budget, args.workers)
    else:
        reports = [run_suite(SuiteSpec(SuiteId(args.suite), lo, hi, args.budget, args.workers))]
    data = [r.to_json() for r in reports]
    lines, rows = [], []
    for r in reports:
        status = "PASS" if r.ok else "FAIL"
        lines.append(
            f"{status} {r.suite_id.value}: checked={r.checked} passed={r.passed} "
            f"failed={len(r.failed)} budget_exhausted={len(r.budget_exhausted)} "
            f"({r.elapsed:.2f}s)"
        )
        for name, entry in sorted(r.deviations.items()):
            lines.append(f"  expected deviation: {name} x{entry['count']}")
        for f in r.failed[:5]:
            lines.append(f"  counterexample {f['input']}: {f['predicate']}")
        rows.append([r.suite_id.value, r.checked, r.passed, len(r.failed), len(r.budget_exhausted)])
    header = ["suite_id", "checked", "passed", "failed", "budget_exhausted"]
    out = Output(data, "\n".join(lines), header, rows)
    if any(r.failed for r in reports):
        return out, EXIT_FAIL
    if any(r.budget_exhausted for r in reports):
        return out, EXIT_BUDGET
    return out, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--budget", type=_int, default=None,
                        help="odd-step budget (default $COLLATZNET_BUDGET or 100000)")
    common.add_argument("--max-steps", type=_int, default=None,
                        help="raw-step budget for seq (default as --budget)")

    parser = _Parser(prog="collatznet", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, func, help_, *positional):
        p = sub.add_parser(name, parents=[common], help=help_)
        for arg in positional:
            p.add_argument(arg, type=_int)
        p.set_defaults(func=func)
        return p

    verb("seq", cmd_seq, "raw Collatz sequence to the first 1", "a")
    verb("odds", cmd_odds, "odd subsequence to the first 1", "a")
    verb("reverse", cmd_reverse, "odd reverse Collatz sequence", "a")
    verb("couple", cmd_couple, "coupling of n, 2n+1, 4n+3", "n")
    verb("decompose", cmd_decompose, "2-adic and jump decompositions", "a")
    verb("reduce", cmd_reduce, "24t+21 representative", "a")
    verb("table", cmd_table, "b_i companion table", "a")
    p = verb("network", cmd_network, "diagonal array and its property report", "n")
    p.add_argument("--rows", type=_int, default=8)
    p.add_argument("--cols", type=_int, default=13)
    p.add_argument("--properties", action="store_true",
                   help="append the nine-property report to text output")
    verb("locate", cmd_locate, "array cell holding an odd number", "a")
    verb("target", cmd_target, "merge target t_i of a diagonal cell", "n", "i")
    p = verb("verify", cmd_verify, "range verification suites")
    p.add_argument("--suite", default="all", choices=["all"] + [s.value for s in SuiteId])
    p.add_argument("--range", type=_range, default=(1, 9999), metavar="LO..HI")
    p.add_argument("--workers", type=_int, default=1)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.budget is None:
        try:
            args.budget = default_budget()
        except ValueError:
            parser.error("COLLATZNET_BUDGET is not an integer")
    if args.max_steps is None:
        args.max_steps = args.budget
    try:
        out, code = args.func(args)
    except (DomainError, ValueError) as exc:
        print(f"collatznet: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(out.render(args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
