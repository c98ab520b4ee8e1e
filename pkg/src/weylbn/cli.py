"""Command-line verification suites with machine-readable reports.

Subcommands: ``lemma2`` (double-coset sweep with witnesses, root-count
gaps, and longest-element classification), ``bn`` (axioms, Bruhat cells,
double-coset product law, intersection identity, and classification for
one example system), ``roots`` and ``reduced-words`` (listings), and
``report`` (every suite, one JSON document).

Exit codes: 0 all cases passed, 1 at least one case failed, 2 usage or
parse error.  Formats: text (default), json, csv.  The JSON format is
byte-stable across runs (sorted keys, canonical case order, no
timings); wall time is shown in the text format only.  All numbers are
exact integers.  The environment variable WEYL_BN_MAX_GROUP overrides
the exhaustive-check group-size cap.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import cosets, fingrp, titssys
from .errors import EnumerationCapExceeded, WeylBNError, WitnessNotApplicable
from .rootsys import build_root_system, is_end_node, reduced_form
from .weyl import (
    element_of,
    format_word,
    is_minus_one,
    longest_element,
    parse_word,
    reduced_words,
)

SCHEMA_VERSION = 1
MAX_GROUP_ENV = "WEYL_BN_MAX_GROUP"


def _max_group():
    raw = os.environ.get(MAX_GROUP_ENV)
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise UsageError(f"{MAX_GROUP_ENV} must be an integer, got {raw!r}")
    return titssys.DEFAULT_MAX_GROUP


class UsageError(WeylBNError):
    pass


@dataclass
class CaseResult:
    id: str
    inputs: dict
    expected: str
    actual: str
    passed: bool

    def to_record(self):
        return {
            "id": self.id,
            "inputs": self.inputs,
            "expected": self.expected,
            "actual": self.actual,
            "pass": self.passed,
        }


@dataclass
class SuiteResult:
    suite_id: str
    cases: list
    wall_time_ms: int
    skipped: tuple = ()

    @property
    def total(self):
        return len(self.cases)

    @property
    def passed(self):
        return sum(1 for c in self.cases if c.passed)

    @property
    def failed(self):
        return self.total - self.passed

    def to_record(self):
        rec = {
            "suite": self.suite_id,
            "summary": {
                "total": self.total,
                "passed": self.passed,
                "failed": self.failed,
            },
            "cases": [c.to_record() for c in self.cases],
        }
        if self.skipped:
            rec["skipped"] = list(self.skipped)
        return rec


def run_suite(suite_id, case_fns, jobs=1, skipped=()):
    """Run (case_id, fn) pairs, merge deterministically by case id."""
    start = time.monotonic()

    def run_one(item):
        case_id, fn = item
        try:
            return fn()
        except WeylBNError as exc:
            return CaseResult(case_id, {}, "no error", f"{type(exc).__name__}: {exc}", False)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_one, case_fns))
    else:
        results = [run_one(item) for item in case_fns]
    results.sort(key=lambda c: c.id)
    wall = int((time.monotonic() - start) * 1000)
    return SuiteResult(suite_id, results, wall, skipped=tuple(skipped))


# ---------------------------------------------------------------------------
# Suite builders


def _minus_one_expected(family, rank):
    """Longest element acts as -1 except in the listed simply-laced types."""
    if family == "A" and rank > 1:
        return False
    if family == "D" and rank % 2 == 1:
        return False
    if family == "E" and rank == 6:
        return False
    return True


def lemma2_cases(max_rank, families=None):
    cases = []
    for fam, rank in cosets.sweep_cases(max_rank, families):
        rs = build_root_system((fam, rank))
        label = f"{fam}{rank}"

        def minus_one_case(rs=rs, fam=fam, rank=rank, label=label):
            w0 = longest_element(reduced_form(rs))
            expected = _minus_one_expected("B" if fam == "BC" else fam, rank)
            actual = is_minus_one(w0)
            return CaseResult(
                f"minus-one/{label}",
                {"family": fam, "rank": rank},
                str(expected),
                str(actual),
                expected == actual,
            )

        cases.append((f"minus-one/{label}", minus_one_case))
        if fam == "A":

            def negation_case(rs=rs, label=label, rank=rank):
                sigma = cosets.w0_negation_map(rs)
                ok = all(sigma[i] == rank + 1 - i for i in sigma)
                return CaseResult(
                    f"negation/{label}",
                    {"family": "A", "rank": rank},
                    "reversal",
                    "reversal" if ok else str(sigma),
                    ok,
                )

            cases.append((f"negation/{label}", negation_case))
        for node in range(1, rank + 1):
            choice = cosets.ParabolicChoice(rs, node)
            cid = f"count/{label}/n{node}"

            def count_case(choice=choice, cid=cid):
                rep = cosets.double_coset_count(choice)
                expected = "2" if rep.expected_two else ">2"
                return CaseResult(
                    cid,
                    rep.to_record(),
                    expected,
                    str(rep.count),
                    rep.passed,
                )

            cases.append((cid, count_case))
            wid = f"witness/{label}/n{node}"

            def witness_case(choice=choice, wid=wid, fam=fam):
                applicable_end = fam == "A" and is_end_node(choice.rs, choice.removed)
                try:
                    rep = cosets.third_coset_witness(choice)
                except WitnessNotApplicable:
                    expected = "not-applicable" if _witness_na_ok(choice) else "pass"
                    return CaseResult(
                        wid,
                        {"family": fam, "rank": choice.rank, "node": choice.removed},
                        expected,
                        "not-applicable",
                        expected == "not-applicable",
                    )
                ok = rep.passed and not applicable_end
                return CaseResult(
                    wid,
                    {
                        "family": fam,
                        "rank": choice.rank,
                        "node": choice.removed,
                        "word": format_word(rep.word),
                    },
                    "pass",
                    "pass" if rep.passed else "fail",
                    ok,
                )

            cases.append((wid, witness_case))
            gid = f"gap/{label}/n{node}"

            def gap_case(choice=choice, gid=gid, fam=fam):
                psi, sub, holds = cosets.root_count_gap_check(choice)
                return CaseResult(
                    gid,
                    {
                        "family": fam,
                        "rank": choice.rank,
                        "node": choice.removed,
                        "psi": psi,
                        "psi_prime": sub,
                    },
                    "gap",
                    "gap" if holds else "no-gap",
                    holds,
                )

            cases.append((gid, gap_case))
    return cases


def _witness_na_ok(choice):
    """Not-applicable is correct when no construction branch applies."""
    core = choice.core
    a = choice.removed
    if choice.family == "A" and is_end_node(choice.rs, a):
        return True
    from .rootsys import branch_node

    return core.node_degree(a) == 1 and branch_node(core) is None


def oracle_cases():
    """Orbit-method counts equal full-enumeration counts."""
    specs = [
        ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("BC", 2), ("BC", 3),
        ("C", 2), ("C", 3), ("G", 2), ("F", 4),
    ]
    frozen = {("A", 3, 1): 2, ("A", 3, 2): 3, ("B", 2, 1): 3, ("G", 2, 1): 4}
    cases = []
    for fam, rank in specs:
        rs = build_root_system((fam, rank))
        for node in range(1, rank + 1):
            choice = cosets.ParabolicChoice(rs, node)
            cid = f"oracle/{fam}{rank}/n{node}"

            def fn(choice=choice, cid=cid, fam=fam, rank=rank, node=node):
                fast = cosets.double_coset_count(choice).count
                slow = cosets.double_coset_count_naive(choice)
                want = frozen.get((fam, rank, node))
                ok = fast == slow and (want is None or fast == want)
                return CaseResult(
                    cid,
                    {"family": fam, "rank": rank, "node": node},
                    str(slow) if want is None else str(want),
                    str(fast),
                    ok,
                )

            cases.append((cid, fn))
    return cases


def weight_set_cases(max_rank=8):
    cases = []
    for m in range(2, max_rank + 1):
        cid = f"weights/A{m}"

        def fn(m=m, cid=cid):
            _, _, diff = cosets.end_node_weight_sets(m)
            ok = len(diff) == m
            return CaseResult(cid, {"rank": m}, str(m), str(len(diff)), ok)

        cases.append((cid, fn))
    return cases


def _system_for(spec, max_group):
    kind = spec[0]
    if kind == "sl":
        return titssys.standard_sl_system(spec[1], spec[2])
    if kind == "sl-rank1":
        return titssys.sl_rank1_column_system(spec[1], spec[2])
    if kind == "projective":
        return titssys.projective_rank1_system(spec[1], spec[2])
    if kind == "affine":
        return titssys.affine_rank1_system(spec[1])
    if kind == "psl3f2-nonstandard":
        c, _ = titssys.psl3_f2_nonstandard_system()
        return c
    raise UsageError(f"unknown system spec {spec!r}")


def bn_cases(spec, max_group):
    c = _system_for(spec, max_group)
    label = c.label
    cases = []

    def axioms_case():
        rep = titssys.check_axioms(c, max_group=max_group)
        return CaseResult(
            f"axioms/{label}",
            {"system": label, "weyl_order": rep.weyl_order},
            "pass",
            "pass" if rep.passed else json.dumps(rep.to_record(), sort_keys=True),
            rep.passed,
        )

    cases.append((f"axioms/{label}", axioms_case))

    def cells_case():
        cells = titssys.bruhat_cells(c)
        total = sum(cells.values())
        ok = total == c.G.order
        return CaseResult(
            f"cells/{label}",
            {"system": label, "cells": {k: v for k, v in sorted(cells.items())}},
            str(c.G.order),
            str(total),
            ok,
        )

    cases.append((f"cells/{label}", cells_case))

    def star_case():
        ok = titssys.star_property_check(c)
        return CaseResult(f"star/{label}", {"system": label}, "True", str(ok), ok)

    cases.append((f"star/{label}", star_case))

    def intersection_case():
        ok = titssys.intersection_identity_check(c)
        return CaseResult(
            f"intersection/{label}", {"system": label}, "True", str(ok), ok
        )

    cases.append((f"intersection/{label}", intersection_case))

    def classify_case():
        flags = titssys.classify(c)
        monotone = (not flags.split) or (flags.weakly_split and flags.saturated)
        return CaseResult(
            f"classify/{label}",
            {"system": label, "flags": flags.to_record()},
            "monotone",
            "monotone" if monotone else "violates split=>weakly-split&saturated",
            monotone,
        )

    cases.append((f"classify/{label}", classify_case))

    if spec[0] == "sl":
        n, p = spec[1], spec[2]

        def formula_case():
            ok = titssys.cell_size_formula_check(n, p)
            return CaseResult(
                f"cell-formula/{label}",
                {"system": label},
                "True",
                str(ok),
                ok,
            )

        cases.append((f"cell-formula/{label}", formula_case))
    return cases


def coxeter_order_cases(max_group=titssys.DEFAULT_MAX_GROUP):
    """Orders of generator products in standard SL_n match type A_{n-1}."""
    from .rootsys import coxeter_matrix
    from itertools import permutations

    cases = []
    for n, p in [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2), (4, 3)]:
        if fingrp.sl_order(n, p) > min(max_group, 10**5):
            continue
        cid = f"coxeter-order/sl-{n}-{p}"

        def fn(n=n, p=p, cid=cid):
            c = titssys.standard_sl_system(n, p)
            S = titssys.find_S(c)
            rs = build_root_system(("A", n - 1))
            want = coxeter_matrix(rs)
            k = len(S)
            ok = k == n - 1 and any(
                all(
                    titssys.order_of_product(c, S[perm[i]], S[perm[j]])
                    == want[i][j]
                    for i in range(k)
                    for j in range(k)
                )
                for perm in permutations(range(k))
            )
            return CaseResult(
                cid, {"n": n, "p": p}, "A-type orders", "match" if ok else "mismatch", ok
            )

        cases.append((cid, fn))
    return cases


def rank1_agreement_cases():
    cases = []
    for n, p in [(2, 2), (2, 3), (3, 2)]:
        cid = f"agree/sl-rank1-{n}-{p}"

        def fn(n=n, p=p, cid=cid):
            col = titssys.sl_rank1_column_system(n, p)
            proj = titssys.projective_rank1_system(n, p)
            a = sorted(titssys.bruhat_cells(col).values())
            b = sorted(titssys.bruhat_cells(proj).values())
            ok = (
                a == b
                and titssys.check_axioms(col).passed
                and titssys.check_axioms(proj).passed
            )
            return CaseResult(cid, {"n": n, "p": p}, str(a), str(b), ok)

        cases.append((cid, fn))
    for q in (3, 5, 7):
        cid = f"affine/{q}"

        def fn(q=q, cid=cid):
            c = titssys.affine_rank1_system(q)
            rep = titssys.check_axioms(c)
            flags = titssys.classify(c)
            ok = rep.passed and flags.split
            return CaseResult(
                cid,
                {"q": q, "flags": flags.to_record()},
                "pass+split",
                ("pass" if rep.passed else "fail") + ("+split" if flags.split else ""),
                ok,
            )

        cases.append((cid, fn))
    return cases


def nonstandard_cases():
    def fn():
        c, flags = titssys.psl3_f2_nonstandard_system()
        rep = titssys.check_axioms(c)
        fit = fingrp.fitting_subgroup(c.B)
        std = titssys.standard_sl_system(3, 2)
        std_cells = titssys.bruhat_cells(std)
        b0 = std.B.order
        parabolic_orders = sorted(
            [b0] + [b0 + v for k, v in std_cells.items() if len(k.split()) == 1]
        )
        ok = (
            rep.passed
            and flags.split
            and c.B.order == 21
            and fit.order == 7
            and len(rep.cells) == 2
            and c.B.order not in parabolic_orders
        )
        return CaseResult(
            "psl3f2/nonstandard",
            {
                "b_order": c.B.order,
                "fit_order": fit.order,
                "standard_parabolic_orders": parabolic_orders,
            },
            "rank1+split+|B|=21",
            "ok" if ok else "mismatch",
            ok,
        )

    return [("psl3f2/nonstandard", fn)]


# ---------------------------------------------------------------------------
# Output formatting


def emit_suite(result, fmt, out):
    if fmt == "json":
        doc = {"schema": SCHEMA_VERSION}
        doc.update(result.to_record())
        out.write(json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n")
        return
    if fmt == "csv":
        out.write("id,inputs,expected,actual,pass\n")
        for case in result.cases:
            inputs = json.dumps(case.inputs, sort_keys=True, separators=(",", ":"))
            out.write(
                f'{case.id},"{inputs.replace(chr(34), chr(34) * 2)}",'
                f"{case.expected},{case.actual},{case.passed}\n"
            )
        return
    width = max((len(c.id) for c in result.cases), default=10)
    out.write(
        f"suite {result.suite_id}: total={result.total} passed={result.passed} "
        f"failed={result.failed} wall_ms={result.wall_time_ms}\n"
    )
    for case in result.cases:
        mark = "pass" if case.passed else "FAIL"
        out.write(f"  [{mark}] {case.id:<{width}} expected={case.expected} actual={case.actual}\n")
    for note in result.skipped:
        out.write(f"  [skip] {note}\n")


def _exit_code(results):
    return 0 if all(r.failed == 0 for r in results) else 1


# ---------------------------------------------------------------------------
# Subcommand handlers


def cmd_lemma2(args):
    if not 2 <= args.max_rank <= 12:
        raise UsageError("--max-rank must be between 2 and 12")
    families = set(args.family) if args.family else None
    cases = lemma2_cases(args.max_rank, families)
    if not cases:
        raise UsageError("no families selected")
    result = run_suite("lemma2", cases, jobs=args.jobs)
    emit_suite(result, args.format, sys.stdout)
    return _exit_code([result])


def cmd_bn(args):
    spec = _parse_bn_spec(args)
    max_group = _max_group()
    cases = bn_cases(spec, max_group)
    result = run_suite("bn", cases, jobs=args.jobs)
    emit_suite(result, args.format, sys.stdout)
    return _exit_code([result])


def _parse_bn_spec(args):
    chosen = [
        name
        for name, val in [
            ("sl", args.sl),
            ("sl-rank1", args.sl_rank1),
            ("projective", args.projective),
            ("affine", args.affine),
            ("example", args.example),
        ]
        if val
    ]
    if len(chosen) != 1:
        raise UsageError("choose exactly one of --sl/--sl-rank1/--projective/--affine/--example")
    kind = chosen[0]
    if kind == "example":
        if args.example != "psl3f2-nonstandard":
            raise UsageError(f"unknown example {args.example!r}")
        return ("psl3f2-nonstandard",)
    if kind == "affine":
        return ("affine", args.affine)
    n, p = {"sl": args.sl, "sl-rank1": args.sl_rank1, "projective": args.projective}[kind]
    return (kind, n, p)


def cmd_roots(args):
    try:
        rs = build_root_system((args.family, args.rank))
    except WeylBNError as exc:
        raise UsageError(str(exc))
    if args.format == "json":
        sys.stdout.write(rs.to_json() + "\n")
        return 0
    sys.stdout.write(f"{rs.spec.label()}: {len(rs.roots)} roots, scale={rs.scale}\n")
    for i, v in enumerate(rs.roots):
        sign = "+" if i in rs.positive_set else "-"
        coeff = " ".join(str(x) for x in rs.coeffs[i])
        vec = " ".join(str(x) for x in v)
        sys.stdout.write(f"  {i:>3} {sign} [{vec}] coeffs [{coeff}]\n")
    return 0


def cmd_reduced_words(args):
    try:
        rs = build_root_system((args.family, args.rank))
        word = parse_word(args.word)
        w = element_of(rs, word)
    except (WeylBNError, ValueError) as exc:
        raise UsageError(str(exc))
    try:
        words = sorted(reduced_words(w, cap=args.cap))
    except EnumerationCapExceeded as exc:
        sys.stderr.write(f"cap exceeded: at least {exc.partial_count} reduced words\n")
        return 1
    if args.format == "json":
        doc = {
            "schema": SCHEMA_VERSION,
            "element_length": len(words[0]) if words else 0,
            "words": [format_word(u) for u in words],
        }
        sys.stdout.write(json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n")
        return 0
    sys.stdout.write(f"{len(words)} reduced words\n")
    for u in words:
        sys.stdout.write(format_word(u) + "\n")
    return 0


def cmd_report(args):
    if not args.all:
        raise UsageError("report requires --all")
    if not 2 <= args.max_rank <= 12:
        raise UsageError("--max-rank must be between 2 and 12")
    max_group = _max_group()
    suites = []
    suites.append(run_suite("lemma2", lemma2_cases(args.max_rank), jobs=args.jobs))
    suites.append(run_suite("oracle", oracle_cases(), jobs=args.jobs))
    suites.append(
        run_suite("weights", weight_set_cases(min(args.max_rank, 8)), jobs=args.jobs)
    )
    bn_specs = [
        ("sl", 2, 2), ("sl", 2, 3), ("sl", 2, 5), ("sl", 2, 7),
        ("sl", 3, 2), ("sl", 3, 3), ("sl", 4, 2),
    ]
    std_cases = []
    skipped = []
    for spec in bn_specs:
        if fingrp.sl_order(spec[1], spec[2]) > max_group:
            skipped.append(f"sl-{spec[1]}-{spec[2]}: order over cap {max_group}")
            continue
        std_cases.extend(bn_cases(spec, max_group))
    std_cases.extend(coxeter_order_cases(max_group))
    suites.append(run_suite("bn-standard", std_cases, jobs=args.jobs, skipped=skipped))
    suites.append(run_suite("bn-rank1", rank1_agreement_cases(), jobs=args.jobs))
    suites.append(run_suite("bn-nonstandard", nonstandard_cases(), jobs=args.jobs))
    doc = {
        "schema": SCHEMA_VERSION,
        "suites": [s.to_record() for s in sorted(suites, key=lambda s: s.suite_id)],
    }
    sys.stdout.write(json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n")
    return _exit_code(suites)


# ---------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="weylbn",
        description="Exact verification suites for root-system and Tits-system combinatorics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lemma2", help="double-coset sweep with witnesses and gap checks")
    p.add_argument("--max-rank", type=int, default=8)
    p.add_argument("--family", action="append", choices=["A", "B", "BC", "C", "D", "E", "F", "G"])
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_lemma2)

    p = sub.add_parser("bn", help="verify one example Tits system")
    p.add_argument("--sl", nargs=2, type=int, metavar=("N", "P"))
    p.add_argument("--sl-rank1", nargs=2, type=int, metavar=("N", "P"))
    p.add_argument("--projective", nargs=2, type=int, metavar=("N", "P"))
    p.add_argument("--affine", type=int, metavar="P")
    p.add_argument("--example", type=str)
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_bn)

    p = sub.add_parser("roots", help="list the roots of one system")
    p.add_argument("family", choices=["A", "B", "BC", "C", "D", "E", "F", "G"])
    p.add_argument("rank", type=int)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("reduced-words", help="enumerate the reduced words of a word's element")
    p.add_argument("family", choices=["A", "B", "BC", "C", "D", "E", "F", "G"])
    p.add_argument("rank", type=int)
    p.add_argument("word", type=str)
    p.add_argument("--cap", type=int, default=10**6)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_reduced_words)

    p = sub.add_parser("report", help="run every suite and emit one JSON document")
    p.add_argument("--all", action="store_true")
    p.add_argument("--max-rank", type=int, default=8)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except WeylBNError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1


def console_main():
    sys.exit(main())


if __name__ == "__main__":
    console_main()
