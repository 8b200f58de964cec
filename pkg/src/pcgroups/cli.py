"""Command-line interface.

Exit codes: 0 all checks pass (or nothing applicable to check), 1 any check
failure, 2 usage or load error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .fileformat import PcgParseError, load_pcp_file
from .lemmas import LEMMA_IDS, lemma_suite
from .presentation import validate_consistency
from .runner import RunOptions, load_corpus, run_suite, write_builtin_corpus
from .subgroups import lower_central_series, rank
from .witness import check_single_slot_property
from .words import parse_word, value_set, verbal_subgroup

USAGE_ERROR = 2
CHECK_FAILURE = 1


def _load(path: str, check_consistency: bool = True):
    try:
        return load_pcp_file(path, check_consistency=check_consistency)
    except PcgParseError as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _parse_r_range(text: str) -> tuple[int, ...]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        values = tuple(range(int(lo), int(hi) + 1))
    else:
        values = (int(text),)
    if not values or values[0] < 2:
        raise argparse.ArgumentTypeError("r values must be >= 2")
    return values


def cmd_validate(args) -> int:
    P = _load(args.file, check_consistency=False)
    report = validate_consistency(P)
    print(f"{P.id}: p={P.p} n={P.n} order={P.order}")
    print(f"consistent: {report.consistent}")
    print(f"elements: {report.element_count}")
    for failure in report.failures:
        print(f"failure: {failure}")
    return 0 if report.consistent else CHECK_FAILURE


def cmd_series(args) -> int:
    P = _load(args.file)
    series = lower_central_series(P)
    print(f"{P.id}: order={P.order} class={len(series) - 1}")
    for i, term in enumerate(series, start=1):
        print(f"gamma_{i}: order {term.size}, "
              f"minimal generators {rank(term)}")
    return 0


def cmd_values(args) -> int:
    P = _load(args.file)
    try:
        w = parse_word(args.word)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    values = value_set(w, P)
    W = verbal_subgroup(w, P)
    for v in values:
        print(v)
    print(f"# {len(values)} values; verbal subgroup order {W.size}; "
          f"value set {'equals' if len(values) == W.size else 'is smaller than'} "
          f"the verbal subgroup")
    return 0


def cmd_witness(args) -> int:
    P = _load(args.file)
    verdict = check_single_slot_property(P, args.r)
    print(json.dumps(verdict.to_dict(), sort_keys=True, indent=2))
    if verdict.hypotheses.branch.value == "not_applicable":
        return 0
    return 0 if verdict.equality_holds else CHECK_FAILURE


def cmd_verify(args) -> int:
    P = _load(args.file)
    lemmas = None if args.lemma in (None, "all") else (args.lemma,)
    try:
        reports = lemma_suite(P, args.r, seed=args.seed, lemmas=lemmas)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    failed = False
    for rep in reports:
        line = f"{rep.lemma}: {rep.status} ({rep.instances} instances"
        if rep.sampled:
            line += f", sampled, seed {rep.seed}"
        line += ")"
        print(line)
        for failure in rep.failures:
            print(f"  counterexample: {failure}")
        failed = failed or rep.status == "fail"
    return CHECK_FAILURE if failed else 0


def cmd_corpus_run(args) -> int:
    try:
        entries = load_corpus(args.directory)
    except PcgParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    options = RunOptions(r_values=args.r, seed=args.seed, jobs=args.jobs,
                         with_timings=args.timings)
    report = run_suite(entries, options)
    text = report.to_json()
    if args.report:
        Path(args.report).write_text(text, encoding="utf-8")
        totals = report.totals()
        print(f"report written to {args.report}: {json.dumps(totals, sort_keys=True)}")
    else:
        print(text, end="")
    return 0 if report.ok() else CHECK_FAILURE


def cmd_corpus_builtin(args) -> int:
    paths = write_builtin_corpus(args.directory)
    for path in paths:
        print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcgroups",
        description="finite p-groups from weighted pc presentations: "
                    "validation, series, word values, witnesses, corpus runs")
    sub = parser.add_subparsers(dest="command", required=True)

    q = sub.add_parser("validate", help="check a presentation file for consistency")
    q.add_argument("file")
    q.set_defaults(fn=cmd_validate)

    q = sub.add_parser("series", help="lower central series of a presentation")
    q.add_argument("file")
    q.set_defaults(fn=cmd_series)

    q = sub.add_parser("values", help="value set of an outer commutator word")
    q.add_argument("file")
    q.add_argument("--word", required=True,
                   help="gamma2, gamma3, ... or a bracket string like [[1,2],[3,4]]")
    q.set_defaults(fn=cmd_values)

    q = sub.add_parser("witness", help="search for a single-slot witness tuple")
    q.add_argument("file")
    q.add_argument("-r", type=int, required=True)
    q.set_defaults(fn=cmd_witness)

    q = sub.add_parser("verify", help="run the structural lemma suite")
    q.add_argument("file")
    q.add_argument("-r", type=int, required=True)
    q.add_argument("--lemma", choices=list(LEMMA_IDS) + ["all"], default="all")
    q.add_argument("--seed", type=int, default=1)
    q.set_defaults(fn=cmd_verify)

    corpus = sub.add_parser("corpus", help="operations on presentation corpora")
    csub = corpus.add_subparsers(dest="corpus_command", required=True)

    q = csub.add_parser("run", help="run the full check suite over a directory")
    q.add_argument("directory")
    q.add_argument("-r", type=_parse_r_range, default=(2, 3),
                   help="single value or inclusive range a..b (default 2..3)")
    q.add_argument("--seed", type=int, default=1)
    q.add_argument("--jobs", type=int, default=1)
    q.add_argument("--report", help="write the JSON report to this path")
    q.add_argument("--timings", action="store_true",
                   help="include timing data (breaks byte-for-byte determinism)")
    q.set_defaults(fn=cmd_corpus_run)

    q = csub.add_parser("builtin", help="write the builtin corpus to a directory")
    q.add_argument("directory")
    q.set_defaults(fn=cmd_corpus_builtin)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = args.fn(args)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else USAGE_ERROR
    return code


if __name__ == "__main__":
    sys.exit(main())
