"""Command-line front end: compute, verify, trace, and xset subcommands.

Exit codes: 0 success/agreement, 1 verification mismatch, 2 usage or input
error.  `compute --json` emits a stable schema; `verify` writes a CSV report
whose rows stay in triple order regardless of --jobs.
"""

from __future__ import annotations

import argparse
import csv
import json
import multiprocessing
import random
import sys
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .arith import INPUT_CAP, gcd
from .errors import (
    InputError,
    MemoryCapExceeded,
    NonInvertibleError,
    StructureViolation,
)
from .formulas import (
    FrobeniusResult,
    frobenius,
    johnson_reduce,
    sylvester_g,
    unwind_reduction,
)
from .oracle import frobenius_sieve, xset_oracle
from .params import (
    CaseLabel,
    Triple,
    build_xset,
    compute_base,
    compute_case_params,
    make_triple,
)
from .walk import brauer_shockley_g, lemma3_g, trace_walk

CSV_COLUMNS = [
    "a",
    "b",
    "c",
    "g_formula",
    "g_oracle",
    "case",
    "shortcuts",
    "mu",
    "floor_r_u",
    "agree",
]


def shortcut_names(label: CaseLabel) -> list[str]:
    names = []
    if label.shortcut_LambdaGtDelta:
        names.append("LambdaGtDelta")
    if label.shortcut_DeltaPGtLambdaP:
        names.append("DeltaPGtLambdaP")
    return names


def result_to_json(a: int, b: int, c: int, res: FrobeniusResult) -> dict:
    """Serialize a full dispatcher result; absent branches become null."""
    params = None
    if res.params is not None:
        p = res.params
        params = {
            "k": p.k,
            "ell": p.ell,
            "q": p.q,
            "r": p.r,
            "u": p.u,
            "lambda": p.lam,
            "A": p.A,
            "B": p.B,
            "Lambda": p.Lambda,
            "Delta": p.Delta,
            "LambdaP": p.LambdaP,
            "DeltaP": p.DeltaP,
            "mu": p.mu,
        }
    xset = None
    if res.xset is not None:
        xd = res.xset
        xset = {
            "xs": list(xd.xs),
            "ys": list(xd.ys),
            "xhat": xd.xhat,
            "m": xd.m_index,
            "w": xd.w_index,
        }
    return {
        "a": a,
        "b": b,
        "c": c,
        "g": res.g,
        "case": res.case.case.value,
        "shortcuts": shortcut_names(res.case),
        "params": params,
        "xset": xset,
        "reduction": [{"d": s.d, "third": s.third} for s in res.reduction_trace],
        "method": res.method,
    }


def _plain_json(a: int, b: int, c: int, g: int, method: str) -> dict:
    """Schema document for evaluators that skip the case analysis."""
    return {
        "a": a,
        "b": b,
        "c": c,
        "g": g,
        "case": None,
        "shortcuts": [],
        "params": None,
        "xset": None,
        "reduction": None,
        "method": method,
    }


def _eval_reduced(t: Triple, evaluator: Callable[[Triple], int]) -> int:
    """Run a walk-based evaluator behind the same reduction scaffolding the
    dispatcher uses, so brauer/lemma3 accept any valid generator set."""
    core, trace = johnson_reduce(t)
    if 1 in core:
        g = -1
    elif len(core) == 2:
        g = sylvester_g(core[0], core[1])
    else:
        tc = Triple(gens=core, pairwise_coprime=True)
        k, ell = compute_base(tc)
        if ell <= k:
            # The largest generator is redundant here; both evaluators
            # degenerate to the two-generator value.
            g = sylvester_g(tc.a, tc.b)
        else:
            g = evaluator(tc)
    return unwind_reduction(g, trace)


def _explain_lines(res: FrobeniusResult) -> list[str]:
    lines = [f"case: {res.case.case.value}"]
    names = shortcut_names(res.case)
    if names:
        lines.append("shortcuts: " + ", ".join(names))
    for step in res.reduction_trace:
        lines.append(
            f"reduce: {step.parent} -> {step.child} dividing {step.pair} by "
            f"{step.d}; g = {step.d}*g' + {step.third}*{step.d - 1}"
        )
    if res.params is not None:
        p = res.params
        pairs = [
            ("k", p.k),
            ("ell", p.ell),
            ("q", p.q),
            ("r", p.r),
            ("lambda", p.lam),
            ("u", p.u),
            ("A", p.A),
            ("B", p.B),
            ("Lambda", p.Lambda),
            ("Delta", p.Delta),
            ("LambdaP", p.LambdaP),
            ("DeltaP", p.DeltaP),
            ("mu", p.mu),
        ]
        lines.append(
            "params: " + " ".join(f"{k}={v}" for k, v in pairs if v is not None)
        )
    if res.xset is not None:
        xd = res.xset
        lines.append(
            f"xset: xs={list(xd.xs)} ys={list(xd.ys)} xhat={xd.xhat} "
            f"m={xd.m_index} w={xd.w_index} x_mu={xd.x_mu} "
            f"gaps={sorted({xd.gap1, xd.gap2})}"
        )
    lines.append(f"method: {res.method}")
    if res.violation is not None:
        lines.append(f"structure violation: {res.violation}")
    return lines


def cmd_compute(args: argparse.Namespace) -> int:
    t = make_triple(args.a, args.b, args.c)
    if args.method in ("auto", "formula"):
        res = frobenius(t)
        if args.method == "formula" and res.method != "formula":
            raise InputError(
                f"no closed form covers {t.gens} (fell back to {res.method}); "
                "use --method auto"
            )
        doc = result_to_json(args.a, args.b, args.c, res)
        if args.json:
            print(json.dumps(doc))
        else:
            print(f"g({args.a}, {args.b}, {args.c}) = {res.g}  [{doc['case']}]")
            if args.explain:
                for line in _explain_lines(res):
                    print("  " + line)
        return 0
    if args.method == "sieve":
        g = frobenius_sieve(t)
    elif args.method == "brauer":
        g = _eval_reduced(t, brauer_shockley_g)
    else:
        g = _eval_reduced(t, lemma3_g)
    if args.json:
        print(json.dumps(_plain_json(args.a, args.b, args.c, g, args.method)))
    else:
        print(f"g({args.a}, {args.b}, {args.c}) = {g}  [{args.method}]")
    return 0


@dataclass
class SweepRow:
    """One verified triple; the CSV columns in order, plus the violation
    message (summary-only, not a column)."""

    a: int
    b: int
    c: int
    g_formula: int
    g_oracle: int
    case: str
    shortcuts: str
    mu: Optional[int]
    floor_r_u: Optional[int]
    agree: bool
    violation: Optional[str] = None

    def csv_values(self) -> list[str]:
        return [
            str(self.a),
            str(self.b),
            str(self.c),
            str(self.g_formula),
            str(self.g_oracle),
            self.case,
            self.shortcuts,
            "" if self.mu is None else str(self.mu),
            "" if self.floor_r_u is None else str(self.floor_r_u),
            "true" if self.agree else "false",
        ]


@dataclass
class SweepReport:
    rows: list[SweepRow]
    case_counts: dict[str, int]
    mismatches: int
    violations: int
    shortcut_counts: dict[str, int] = field(default_factory=dict)

    def summary_lines(self) -> list[str]:
        cases = " ".join(f"{k}={v}" for k, v in sorted(self.case_counts.items()))
        lines = [
            f"triples: {len(self.rows)}  mismatches: {self.mismatches}  "
            f"structure_violations: {self.violations}",
            f"cases: {cases}",
        ]
        if self.shortcut_counts:
            lines.append(
                "shortcuts: "
                + " ".join(f"{k}={v}" for k, v in sorted(self.shortcut_counts.items()))
            )
        return lines


def iter_triples(max_c: int, pairwise_only: bool = False):
    """All 2 <= a < b < c <= max_c with gcd(a,b,c)=1, in lexicographic order."""
    for a in range(2, max_c - 1):
        for b in range(a + 1, max_c):
            gab = gcd(a, b)
            for c in range(b + 1, max_c + 1):
                if gcd(gab, c) != 1:
                    continue
                if pairwise_only and (
                    gab != 1 or gcd(a, c) != 1 or gcd(b, c) != 1
                ):
                    continue
                yield (a, b, c)


def sweep_row(abc: tuple[int, int, int]) -> SweepRow:
    a, b, c = abc
    t = make_triple(a, b, c)
    res = frobenius(t)
    g_oracle = frobenius_sieve(t)
    mu = None
    fru = None
    if res.params is not None and res.params.u is not None:
        mu = res.params.mu
        fru = res.params.r // res.params.u
    return SweepRow(
        a=a,
        b=b,
        c=c,
        g_formula=res.g,
        g_oracle=g_oracle,
        case=res.case.case.value,
        shortcuts="+".join(shortcut_names(res.case)),
        mu=mu,
        floor_r_u=fru,
        agree=res.g == g_oracle,
        violation=res.violation,
    )


# Every case label appears in the summary even when absent from the sweep.
ALL_CASES = ["SYLVESTER", "THM3", "THM5A", "THM5B", "MU_BOUNDARY"]


def run_sweep(
    max_c: int = 120,
    pairwise_only: bool = False,
    jobs: int = 1,
    sample: Optional[int] = None,
    seed: int = 0,
) -> SweepReport:
    triples = list(iter_triples(max_c, pairwise_only))
    if sample is not None and sample < len(triples):
        # Sampled rows are re-sorted so the report stays in triple order.
        triples = sorted(random.Random(seed).sample(triples, sample))
    if jobs > 1:
        with multiprocessing.Pool(jobs) as pool:
            rows = pool.map(sweep_row, triples, chunksize=256)
    else:
        rows = [sweep_row(abc) for abc in triples]
    case_counts = {name: 0 for name in ALL_CASES}
    shortcut_counts: dict[str, int] = {}
    mismatches = 0
    violations = 0
    for row in rows:
        case_counts[row.case] = case_counts.get(row.case, 0) + 1
        if row.shortcuts:
            for name in row.shortcuts.split("+"):
                shortcut_counts[name] = shortcut_counts.get(name, 0) + 1
        if not row.agree:
            mismatches += 1
        if row.violation is not None:
            violations += 1
    return SweepReport(
        rows=rows,
        case_counts=case_counts,
        mismatches=mismatches,
        violations=violations,
        shortcut_counts=shortcut_counts,
    )


def write_csv(report: SweepReport, path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for row in report.rows:
            writer.writerow(row.csv_values())


def cmd_verify(args: argparse.Namespace) -> int:
    if args.max < 2:
        raise InputError("--max must be at least 2")
    if args.jobs < 1:
        raise InputError("--jobs must be at least 1")
    if args.sample is not None and args.sample < 1:
        raise InputError("--sample must be at least 1")
    report = run_sweep(
        max_c=args.max,
        pairwise_only=args.pairwise_only,
        jobs=args.jobs,
        sample=args.sample,
        seed=args.seed,
    )
    if args.out:
        write_csv(report, args.out)
        print(f"wrote {len(report.rows)} rows to {args.out}")
    for line in report.summary_lines():
        print(line)
    if report.mismatches:
        for row in report.rows:
            if not row.agree:
                print(
                    f"MISMATCH ({row.a},{row.b},{row.c}): "
                    f"formula={row.g_formula} oracle={row.g_oracle}"
                )
        return 1
    return 0


def cmd_trace(args: argparse.Namespace) -> int:
    t = make_triple(args.a, args.b, args.c)
    if len(t.gens) != 3:
        raise InputError("trace needs three distinct generators")
    a, b, c = t.a, t.b, t.c
    k, ell = compute_base(t)
    if ell <= k:
        raise InputError(
            f"triple {t.gens} has ell={ell} <= k={k}: the walk never beats "
            "plain multiples of b, g = g(a, b)"
        )
    trace = trace_walk(t, ell, args.x)
    # Mark where the single-drop heuristic lands when it misses: from a true
    # minimum at (x, y) it predicts (x+s, y+q+1) for x < r, else (x-r, y+q).
    q = a // (a - ell)
    r = a - q * (a - ell)
    fakeitems: set[int] = set()
    for st, flag in zip(trace.states, trace.is_min):
        if not flag:
            continue
        dy = q + 1 if st.x < r else q
        if st.y + dy <= a - 1 and not trace.is_min[st.y + dy]:
            fakeitems.add(st.y + dy)
    print(f"walk of class x={args.x} for (a, b, c) = ({a}, {b}, {c}), ell={ell}")
    print(f"{'t':>4} {'x':>6} {'y':>4} {'v':>10}  flag")
    for st, flag in zip(trace.states, trace.is_min):
        mark = "min" if flag else ("fake" if st.y in fakeitems else "")
        print(f"{st.y:>4} {st.x:>6} {st.y:>4} {st.v:>10}  {mark}")
    return 0


def cmd_xset(args: argparse.Namespace) -> int:
    t = make_triple(args.a, args.b, args.c)
    if len(t.gens) != 3 or not t.pairwise_coprime:
        raise InputError("the X-set analysis needs three pairwise-coprime generators")
    p = compute_case_params(t)  # rejects ell <= k
    if p.b * p.r < p.c * p.q:
        raise InputError(
            f"triple {t.gens} has br={p.b * p.r} < cq={p.c * p.q}: "
            "the X-set branch needs br > cq"
        )
    xd = build_xset(p)
    oracle = xset_oracle(t, p)
    print(
        f"X-set for (a, b, c) = ({p.a}, {p.b}, {p.c}): r={p.r} u={p.u} "
        f"mu={p.mu} floor(r/u)={p.r // p.u}"
    )
    print(f"{'i':>4} {'x_i':>6} {'y_i':>6}")
    for i, (x, y) in enumerate(zip(xd.xs, xd.ys)):
        notes = []
        if i == 0:
            notes.append("= r")
        if i == xd.m_index:
            notes.append("= xhat")
        if i == xd.w_index:
            notes.append("(w)")
        if i == len(xd.xs) - 1:
            notes.append("= x_mu")
        print(f"{i:>4} {x:>6} {y:>6}  {' '.join(notes)}")
    w = "-" if xd.w_index is None else str(xd.w_index)
    print(
        f"xhat={xd.xhat} m={xd.m_index} w={w} x_mu={xd.x_mu} "
        f"gaps={sorted({xd.gap1, xd.gap2})}"
    )
    print(f"formula set: {sorted(xd.xs)}")
    print(f"oracle set:  {sorted(oracle)}")
    if set(xd.xs) != oracle:
        print("DISAGREE")
        return 1
    print("agree: yes")
    return 0


def _generator(text: str) -> int:
    value = int(text)
    if not 1 <= value <= INPUT_CAP:
        raise argparse.ArgumentTypeError(
            f"generators must lie in 1..{INPUT_CAP}, got {text}"
        )
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frob3",
        description="Exact Frobenius numbers for three generators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", help="g for one generator set")
    p_compute.add_argument("a", type=_generator)
    p_compute.add_argument("b", type=_generator)
    p_compute.add_argument("c", type=_generator)
    p_compute.add_argument(
        "--method",
        choices=["auto", "formula", "brauer", "lemma3", "sieve"],
        default="auto",
    )
    p_compute.add_argument("--json", action="store_true", help="emit the JSON schema")
    p_compute.add_argument(
        "--explain", action="store_true", help="print case, params, and X-set data"
    )
    p_compute.set_defaults(func=cmd_compute)

    p_verify = sub.add_parser("verify", help="sweep formulas against the sieve")
    p_verify.add_argument("--max", type=int, default=120, help="upper bound on c")
    p_verify.add_argument(
        "--pairwise-only", action="store_true", help="skip reducible triples"
    )
    p_verify.add_argument("--jobs", type=int, default=1)
    p_verify.add_argument("--out", help="write the CSV report here")
    p_verify.add_argument(
        "--sample", type=int, default=None, help="verify a random subset this size"
    )
    p_verify.add_argument("--seed", type=int, default=0, help="sampling seed")
    p_verify.set_defaults(func=cmd_verify)

    p_trace = sub.add_parser("trace", help="print one walk with min/fake flags")
    p_trace.add_argument("a", type=_generator)
    p_trace.add_argument("b", type=_generator)
    p_trace.add_argument("c", type=_generator)
    p_trace.add_argument("--x", type=int, default=1, help="start class, 1..a-1")
    p_trace.set_defaults(func=cmd_trace)

    p_xset = sub.add_parser("xset", help="formula X-set next to the oracle set")
    p_xset.add_argument("a", type=_generator)
    p_xset.add_argument("b", type=_generator)
    p_xset.add_argument("c", type=_generator)
    p_xset.set_defaults(func=cmd_xset)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, NonInvertibleError, MemoryCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except StructureViolation as exc:
        print(f"structure violation: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
