"""Command line front end.

Exit codes: 0 success, 1 negative verdict, 2 usage or parse error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import classics, counting, hyperbolic
from .profiles import GRAMMAR, ProfileParseError, parse_profile
from .words import FiniteWord, WordParseError, format_word_file, min_recurrence_time, read_word, verify_phi_aperiodic

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

PROFILE_HELP = "gauge: " + GRAMMAR


class UsageError(Exception):
    pass


def _profile(text: str):
    try:
        return parse_profile(text)
    except ProfileParseError as exc:
        raise UsageError(f"bad profile: {exc}") from None


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _envelope(command: str, inputs: dict, result) -> str:
    return json.dumps({"schema": f"aperiodic.{command}/1", "inputs": inputs, "result": result},
                      indent=2)


def _emit(text: str, out=None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------
# subcommands

def cmd_generate(args) -> int:
    prof = _profile(args.profile)
    if args.threads != 1:
        print("note: word search is sequential; --threads ignored", file=sys.stderr)
    try:
        w = counting.construct_word(args.k, prof, args.len, order=args.order, seed=args.seed,
                                    node_cap=args.node_cap)
    except counting.Exhausted as exc:
        print(f"exhausted: {exc}", file=sys.stderr)
        return EXIT_FALSE
    except counting.BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    verdict = verify_phi_aperiodic(w, prof)
    stamp = "verified" if verdict.ok else f"FAILED {verdict.witness}"
    if args.format == "json":
        _emit(_envelope("generate", {"k": args.k, "profile": prof.to_text(), "len": args.len,
                                     "order": args.order, "seed": args.seed},
                        {"word": str(w), "stamp": stamp}), args.out)
    else:
        # a word file whose trailing comment is the stamp, so it reads back as is
        _emit(format_word_file(w) + f"# {stamp}", args.out)
    return EXIT_OK if verdict.ok else EXIT_FALSE


def _read(args) -> FiniteWord:
    try:
        return read_word(args.file, args.k)
    except (WordParseError, ValueError) as exc:
        raise UsageError(f"bad word file: {exc}") from None


def cmd_verify(args) -> int:
    prof = _profile(args.profile)
    w = _read(args)
    v = verify_phi_aperiodic(w, prof)
    if args.format == "json":
        res = {"ok": v.ok, "witness": None if v.ok else dict(zip("isl", v.witness))}
        _emit(_envelope("verify", {"file": args.file, "k": w.k, "profile": prof.to_text(), "length": len(w)}, res))
    else:
        if v.ok:
            print("ok")
        else:
            i, s, l = v.witness
            print(f"violation i={i} s={s} l={l}")
    return EXIT_OK if v.ok else EXIT_FALSE


def _ledger_out(args, led: counting.CountLedger, command: str) -> None:
    if args.format == "json":
        _emit(_envelope(command, {"k": led.k, "profile": led.profile.to_text(), "m_max": led.m_max,
                                  "c": None if led.c is None else str(led.c)}, led.to_dict()), args.out)
        return
    head = []
    if led.condition is not None:
        rep = led.condition
        head.append(f"# condition c={rep.c} status={rep.status} "
                    f"margin=[{rep.margin_lo},{rep.margin_hi}] tail={rep.tail_treatment}")
    if led.partial:
        head.append("# partial: budget exceeded, later rows incomplete")
    _emit("\n".join(head + [led.to_csv().rstrip("\n")]), args.out)


def cmd_count(args) -> int:
    prof = _profile(args.profile)
    code = EXIT_OK
    try:
        led = counting.count_good_words(args.k, prof, args.m, threads=args.threads,
                                        node_cap=args.node_cap)
    except counting.BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        led, code = exc.partial, EXIT_BUDGET
    bound = counting.lower_bound_ledger(args.k, prof, args.m, args.c)
    _ledger_out(args, led.merge(bound), "count")
    return code


def cmd_bound(args) -> int:
    prof = _profile(args.profile)
    led = counting.lower_bound_ledger(args.k, prof, args.m, args.c)
    _ledger_out(args, led, "bound")
    return EXIT_OK


def cmd_recurrence(args) -> int:
    w = _read(args)
    l_max = min(args.lmax, len(w) - 1)
    tab = min_recurrence_time(w, l_max)
    rows = []
    for l, r in enumerate(tab.values):
        # window lengths 2^n - 1 recurring within 2^n: the squares of period 2^n
        n = (l + 1).bit_length() - 1
        square = (l + 1) == 2 ** n and r is not None and r <= l + 1
        rows.append({"l": l, "R": r, "square_row": square})
    if args.format == "json":
        _emit(_envelope("recurrence", {"file": args.file, "lmax": l_max}, rows))
    else:
        print("l,R,square_row")
        for row in rows:
            print(f"{row['l']},{'' if row['R'] is None else row['R']},{int(row['square_row'])}")
    return EXIT_OK


def cmd_mt(args) -> int:
    if args.start > args.stop:
        raise UsageError("--from must not exceed --to")
    w = classics.morse_thue_window(args.start, args.stop)
    if args.format == "json":
        _emit(_envelope("mt", {"from": args.start, "to": args.stop}, {"word": str(w)}), args.out)
    elif args.out:
        _emit(format_word_file(w), args.out)
    else:
        print(str(w))
    return EXIT_OK


def cmd_rotation(args) -> int:
    try:
        cf = classics.ContinuedFraction.parse(args.cf)
    except classics.CFParseError as exc:
        raise UsageError(str(exc)) from None
    try:
        bad = classics.badness_profile(cf, args.Q)
        verdict = classics.is_Fc_aperiodic_at_zero(cf, args.c, args.Q)
    except classics.PrecisionExhausted as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    if args.format == "json":
        _emit(_envelope("rotation", {"cf": str(cf), "c": str(args.c), "Q": args.Q},
                        {"badness": bad.to_dict(), "verdict": verdict.to_dict()}))
    else:
        print("true" if verdict.ok else f"false q={verdict.witness_q}")
        print(f"# min q||q alpha|| over q<={args.Q}: {bad.value:.12g} at q={bad.q}")
    return EXIT_OK if verdict.ok else EXIT_FALSE


def cmd_hyperbolic(args) -> int:
    try:
        rep = hyperbolic.geodesic_parameter_chain(args.n, args.delta, args.im, args.eps0, K=args.grid_bits)
    except hyperbolic.Infeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except hyperbolic.SearchBudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    _emit(rep.to_json(), args.out)
    return EXIT_OK if all(rep.checks.values()) else EXIT_FALSE


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="aperiodic", description=f"{__doc__}\ngauges: {GRAMMAR}\n",
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, fmt_choices, fmt_default, k_required=False):
        p.add_argument("--format", choices=fmt_choices, default=fmt_default)
        p.add_argument("--out", help="write to this file instead of stdout")
        p.add_argument("--threads", type=int, default=1,
                       help="worker threads; counts are identical, witness words are deterministic only with 1")
        p.add_argument("--node-cap", type=int, default=counting.DEFAULT_NODE_CAP)
        if k_required:
            p.add_argument("-k", type=int, required=True, help="alphabet size")

    p = sub.add_parser("generate", help="search for an aperiodic word")
    common(p, ["text", "json"], "text", k_required=True)
    p.add_argument("--profile", required=True, help=PROFILE_HELP)
    p.add_argument("--len", type=int, required=True)
    p.add_argument("--order", choices=["lex", "random"], default="lex")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_generate, node_cap=10 ** 7)

    p = sub.add_parser("verify", help="check a word file against a gauge")
    common(p, ["text", "json"], "text")
    p.add_argument("--file", required=True)
    p.add_argument("-k", type=int, help="alphabet size (default: header or largest symbol)")
    p.add_argument("--profile", required=True, help=PROFILE_HELP)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("count", help="exact counts of good words with the recursive bound")
    common(p, ["csv", "json"], "csv", k_required=True)
    p.add_argument("--profile", required=True, help=PROFILE_HELP)
    p.add_argument("--m", type=int, required=True, help="largest word length")
    p.add_argument("--c", type=_fraction, help="growth constant for the c^m column")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("bound", help="the recursive lower bound and the sufficiency margin")
    common(p, ["csv", "json"], "csv", k_required=True)
    p.add_argument("--profile", required=True, help=PROFILE_HELP)
    p.add_argument("--c", type=_fraction, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("recurrence", help="minimal recurrence times of a word file")
    common(p, ["csv", "json"], "csv")
    p.add_argument("--file", required=True)
    p.add_argument("-k", type=int)
    p.add_argument("--lmax", type=int, required=True)
    p.set_defaults(func=cmd_recurrence)

    p = sub.add_parser("mt", help="a window of the two-sided Morse-Thue word")
    common(p, ["text", "json"], "text")
    p.add_argument("--from", dest="start", type=int, required=True)
    p.add_argument("--to", dest="stop", type=int, required=True)
    p.set_defaults(func=cmd_mt)

    p = sub.add_parser("rotation", help="return times of a circle rotation at time 0")
    common(p, ["text", "json"], "text")
    p.add_argument("--cf", required=True, help='continued fraction, e.g. "1;(1)" or "0;1,2,3..."')
    p.add_argument("--c", type=_fraction, required=True)
    p.add_argument("--Q", type=int, required=True, help="horizon")
    p.set_defaults(func=cmd_rotation)

    p = sub.add_parser("hyperbolic", help="parameter chain for exponential gauges on hyperbolic manifolds")
    common(p, ["json"], "json")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=_fraction, required=True)
    p.add_argument("--im", required=True, help="injectivity radius (decimal)")
    p.add_argument("--eps0", required=True, help="distance constant (decimal)")
    p.add_argument("--grid-bits", type=int, default=5)
    p.set_defaults(func=cmd_hyperbolic)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
