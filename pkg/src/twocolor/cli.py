"""Batch command line: enumerate families, apply bijections, run verification
sweeps, dump q-series and count tables.

Exit codes: 0 pass, 1 mismatch or domain violation, 2 usage error,
3 resource exhaustion during a sweep.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from typing import Callable, Optional, Sequence

from . import bijections as bij
from . import families as fam
from . import partitions as core
from . import qseries as qs
from . import verify as ver
from .partitions import DomainError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCES = 0, 1, 2, 3

FAMILIES = ("L", "A", "B", "D", "W")
MAPS = ("phi", "phi-inv", "psi", "psi-inv", "eta", "eta-inv", "theta", "theta-inv")
ENUM_THEOREMS = ("1.1", "1.2", "1.3", "1.5", "1.6", "1.7", "phi", "psi", "eta", "theta")
SERIES_THEOREMS = ("lebesgue", "sylvester", "qbinomial", "gf2", "gf3", "gf8", "gfAref")


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {v}")
    return v


def _positive(text: str) -> int:
    v = _nonneg(text)
    if v == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twocolor", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def stats(p, with_d=True):
        if with_d:
            p.add_argument("--d", type=_positive, help="difference parameter of L_d")
        p.add_argument("--k", type=_nonneg)
        p.add_argument("--l", type=_nonneg)
        p.add_argument("--j", type=_nonneg)
        p.add_argument("--json", action="store_true", help="structured output")

    p = sub.add_parser("enum", help="list the members of a family")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--n", type=_nonneg, required=True)
    stats(p)

    p = sub.add_parser("apply", help="apply a bijection or its inverse")
    p.add_argument("--map", required=True, choices=MAPS)
    p.add_argument("input", help="serialized object, e.g. '12g+8g+6r+4r+3g+1r'")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="exhaustive count, bijection or identity check")
    p.add_argument("theorem", choices=ENUM_THEOREMS + SERIES_THEOREMS)
    p.add_argument("--max-n", type=_nonneg)
    p.add_argument("--order", type=_nonneg)
    p.add_argument("--t-order", type=_nonneg, default=12)
    p.add_argument("--json", action="store_true")
    p.add_argument("--mutate", choices=sorted(fam.MUTATIONS),
                   help="flip one L_d rule (test aid: the check should then fail)")

    p = sub.add_parser("qseries", help="dump a truncated generating function")
    p.add_argument("name", choices=sorted(qs.BUILDERS))
    p.add_argument("--order", type=_nonneg, required=True)
    p.add_argument("--t-order", type=_nonneg)

    p = sub.add_parser("table", help="count table |family(n,k,l)| for n <= max-n")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--max-n", type=_nonneg, required=True)
    p.add_argument("--d", type=_positive)
    return parser


# -- family plumbing ---------------------------------------------------------


def _family_items(args, n: int):
    """Yield ``(object, text, json, stats)`` for family members of weight n."""
    k, l, j = args.k, args.l, getattr(args, "j", None)
    if args.family == "L":
        for p in fam.enumerate_Ld(args.d, n, k, l):
            yield p, fam.colored_to_text(p), fam.colored_to_json(p), fam.ld_stats(p)
    elif args.family == "A":
        for p in fam.enumerate_A(n, k, l, j):
            yield p, fam.colored_to_text(p), fam.colored_to_json(p), fam.is_in_A(p)
    elif args.family == "B":
        for t in fam.enumerate_B(n, k, l):
            yield t, core.triple_to_text(t), core.triple_to_json(t), fam.b_stats(t)
    elif args.family == "D":
        for q in fam.enumerate_D(n, k, l):
            yield q, core.to_text(q), core.to_json(q), fam.d_stats(q)
    else:
        for w in fam.enumerate_W(n, k, l, j):
            yield w, w.letters, {"word": w.letters}, fam.word_stats(w)


def _check_family_args(parser, args) -> None:
    if args.family == "L" and args.d is None:
        parser.error("family L needs --d")
    if args.family != "L" and getattr(args, "d", None) is not None:
        parser.error(f"--d does not apply to family {args.family}")
    if getattr(args, "j", None) is not None and args.family not in ("A", "W"):
        parser.error(f"--j applies only to families A and W, not {args.family}")


def cmd_enum(args, out) -> int:
    count = 0
    for _, text, obj, _ in _family_items(args, args.n):
        print(json.dumps(obj) if args.json else text, file=out)
        count += 1
    print(json.dumps({"count": count}) if args.json else f"count: {count}", file=out)
    return EXIT_OK


def cmd_table(args, out) -> int:
    with_j = args.family in ("A", "W")
    print("\t".join(["n", "k", "l"] + (["j"] if with_j else []) + ["count"]), file=out)
    args.k = args.l = args.j = None
    for n in range(args.max_n + 1):
        counts = Counter()
        for *_, st in _family_items(args, n):
            counts[(st.k, st.l) + ((st.j,) if with_j else ())] += 1
        for key in sorted(counts):
            print("\t".join(map(str, (n,) + key + (counts[key],))), file=out)
    return EXIT_OK


# -- apply -------------------------------------------------------------------

_APPLY: dict[str, tuple[Callable, Callable, Callable, Callable]] = {
    # map: (parse, forward, text, json)
    "phi": (fam.parse_colored, bij.phi, str, lambda w: {"word": w.letters}),
    "phi-inv": (fam.parse_word, bij.phi_inverse, fam.colored_to_text, fam.colored_to_json),
    "psi": (fam.parse_word, bij.psi, bij.pair_to_text, bij.pair_to_json),
    "psi-inv": (bij.parse_pair, bij.psi_inverse, str, lambda w: {"word": w.letters}),
    "eta": (fam.parse_colored, bij.eta, core.triple_to_text, core.triple_to_json),
    "eta-inv": (core.parse_triple, bij.eta_inverse, fam.colored_to_text, fam.colored_to_json),
    "theta": (fam.parse_colored, bij.theta, core.to_text, core.to_json),
    "theta-inv": (core.parse_partition, bij.theta_inverse, fam.colored_to_text, fam.colored_to_json),
}


def cmd_apply(args, out) -> int:
    parse, forward, text, to_json = _APPLY[args.map]
    img = forward(parse(args.input))
    print(json.dumps(to_json(img)) if args.json else text(img), file=out)
    return EXIT_OK


# -- verify ------------------------------------------------------------------


def _run_check(args, progress) -> ver.Report:
    rules = fam.MUTATIONS[args.mutate] if args.mutate else fam.DEFAULT_RULES
    name = args.theorem
    if name in SERIES_THEOREMS:
        order = args.order if args.order is not None else args.max_n
        series = {
            "lebesgue": ver.check_lebesgue,
            "sylvester": ver.check_sylvester,
            "gf2": ver.check_gf2,
            "gf3": ver.check_gf3,
            "gf8": ver.check_gf8,
            "gfAref": ver.check_gfAref,
        }
        if name == "qbinomial":
            return ver.check_qbinomial(order, args.t_order)
        return series[name](order)
    n = args.max_n
    if name in ("1.5", "1.6", "1.7"):
        d = {"1.5": 1, "1.6": 2, "1.7": 3}[name]
        return ver.check_refined(d, n, rules=rules, progress=progress)
    sweeps = {
        "1.1": ver.check_L1_totals,
        "1.2": ver.check_L2_totals,
        "1.3": ver.check_L3_totals,
        "phi": ver.check_phi,
        "eta": ver.check_eta,
        "theta": ver.check_theta,
    }
    if name == "psi":
        return ver.check_psi(n, progress=progress)
    return sweeps[name](n, rules=rules, progress=progress)


def cmd_verify(args, out, err) -> int:
    def progress(n: int) -> None:
        print(f"[{args.theorem}] n={n}", file=err, flush=True)

    try:
        rep = _run_check(args, progress)
    except (MemoryError, RecursionError) as exc:
        print(f"resource exhausted: {type(exc).__name__}", file=err)
        return EXIT_RESOURCES
    if args.json:
        print(json.dumps(rep.to_json()), file=out)
    else:
        for cell in rep.cells:
            print(cell.line(), file=out)
        print(f"{rep.status.upper()} {rep.name} ({len(rep.cells)} cells)", file=out)
        if rep.first_mismatch:
            print(f"first mismatch: {rep.first_mismatch}", file=out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_qseries(args, out) -> int:
    series = qs.BUILDERS[args.name](args.order, args.t_order)
    print(series.dump(), file=out)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command in ("enum", "table"):
            _check_family_args(parser, args)
        if args.command == "verify":
            if args.theorem in ENUM_THEOREMS and args.max_n is None:
                parser.error(f"verify {args.theorem} needs --max-n")
            if args.theorem in SERIES_THEOREMS and args.order is None and args.max_n is None:
                parser.error(f"verify {args.theorem} needs --order")
            if args.mutate and args.theorem in SERIES_THEOREMS + ("psi",):
                parser.error(f"--mutate has no effect on {args.theorem}")
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        if args.command == "enum":
            return cmd_enum(args, out)
        if args.command == "table":
            return cmd_table(args, out)
        if args.command == "apply":
            return cmd_apply(args, out)
        if args.command == "verify":
            return cmd_verify(args, out, err)
        return cmd_qseries(args, out)
    except DomainError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_FAIL


def main_entry() -> None:
    sys.exit(main())
