"""Command-line interface.

Subcommands: seq, window, zeck, classify, s-seq, cutoffs, gamma, diag,
play, serve, verify. Exit codes: 0 success, 1 usage error, 2
verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import output
from .cutoffs import (
    CutoffComputationError,
    enumerate_cutoffs,
    half_integer_survey,
    load_cutoff_cache,
    oscillation_diagnostic,
    save_cutoff_cache,
    verify_fractional_cutoffs,
    verify_integer_cutoffs,
)
from .game import DEFAULT_PILE_LIMIT, GameState, Solver, initial_state
from .numerics import parse_rational
from .sequence import detect_recurrence, generate, s_sequence, window, zeckendorf

USAGE_ERROR = 1
VERIFICATION_ERROR = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _alpha(text: str) -> Fraction:
    try:
        value = parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))
    return value


def _alpha_ge1(text: str) -> Fraction:
    value = _alpha(text)
    if value < 1:
        raise argparse.ArgumentTypeError("alpha must be >= 1")
    return value


def default_cache_path() -> Path:
    root = os.environ.get("TAG_CACHE_DIR")
    if root:
        return Path(root) / "cutoffs.json"
    return Path.home() / ".cache" / "alphatag" / "cutoffs.json"


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="alphatag", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_seq = sub.add_parser("seq", help="losing-position sequence for an alpha")
    p_seq.add_argument("--alpha", type=_alpha_ge1, required=True)
    group = p_seq.add_mutually_exclusive_group(required=True)
    group.add_argument("--count", type=int)
    group.add_argument("--max-value", type=int)
    p_seq.add_argument("--format", choices=("json", "csv", "text"), default="json")

    p_win = sub.add_parser("window", help="window of the term at an index")
    p_win.add_argument("--alpha", type=_alpha_ge1, required=True)
    p_win.add_argument("--index", type=int, required=True)

    p_zeck = sub.add_parser("zeck", help="greedy decomposition of n into sequence terms")
    p_zeck.add_argument("--alpha", type=_alpha_ge1, required=True)
    p_zeck.add_argument("--n", type=int, required=True)

    p_cls = sub.add_parser("classify", help="win/lose class of a position")
    p_cls.add_argument("--alpha", type=_alpha_ge1, required=True)
    p_cls.add_argument("--pile", type=int, required=True)
    p_cls.add_argument("--cap", type=int, default=None, help="take cap (default: pile - 1)")
    p_cls.add_argument("--limit", type=int, default=DEFAULT_PILE_LIMIT)

    p_ss = sub.add_parser("s-seq", help="recurrence index sequence S[i]")
    p_ss.add_argument("--alpha", type=_alpha_ge1, required=True)
    p_ss.add_argument("--count", type=int, required=True)

    p_cut = sub.add_parser("cutoffs", help="enumerate cutoffs in a range")
    p_cut.add_argument("--from", dest="from_", type=_alpha_ge1, default=Fraction(1))
    p_cut.add_argument("--to", type=_alpha_ge1, required=True)
    p_cut.add_argument("--out", type=Path, default=None)
    p_cut.add_argument("--cache", type=Path, default=None, help="cache file path")
    p_cut.add_argument("--no-cache", action="store_true")
    p_cut.add_argument("--jobs", type=int, default=1)

    p_gamma = sub.add_parser("gamma", help="cutoff counts on the half-integer grid")
    p_gamma.add_argument("--upto", type=_alpha_ge1, required=True)
    p_gamma.add_argument("--out", type=Path, default=None)
    p_gamma.add_argument("--format", choices=("csv", "json"), default="csv")
    p_gamma.add_argument("--cache", type=Path, default=None)
    p_gamma.add_argument("--no-cache", action="store_true")
    p_gamma.add_argument("--jobs", type=int, default=1)

    p_diag = sub.add_parser("diag", help="ratio oscillation and root diagnostics")
    p_diag.add_argument("--alpha", type=_alpha_ge1, required=True)
    p_diag.add_argument("--count", type=int, default=200)

    p_play = sub.add_parser("play", help="play interactively against the engine")
    p_play.add_argument("--alpha", type=_alpha_ge1, required=True)
    p_play.add_argument("--pile", type=int, required=True)

    p_serve = sub.add_parser("serve", help="serve the JSON API for the browser UI")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8642)
    p_serve.add_argument("--static", type=Path, default=None, help="directory with the built UI")
    p_serve.add_argument("--session-timeout", type=float, default=30.0, help="minutes")

    p_ver = sub.add_parser("verify", help="run the cutoff validation suites")
    p_ver.add_argument("--integer-max", type=int, default=10)
    p_ver.add_argument("--half-limit", type=_alpha_ge1, default=Fraction(31, 2))
    p_ver.add_argument("--cache", type=Path, default=None)
    p_ver.add_argument("--no-cache", action="store_true")

    return parser


def _emit(text: str, out: Path | None = None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")


def _load_cache(path: Path | None, disabled: bool):
    if disabled:
        return None, None
    path = path or default_cache_path()
    cache = {}
    if path.exists():
        cache = load_cutoff_cache(path)
    return cache, path


def _store_cache(cache, path: Path | None) -> None:
    if cache is None or path is None:
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    save_cutoff_cache(path, cache)


def cmd_seq(args) -> int:
    if args.count is not None:
        if args.count < 2:
            raise CliUsage("--count must be at least 2")
        seq = generate(args.alpha, count=args.count)
        terms = list(seq.terms)
        horizon = {"count": args.count}
    else:
        if args.max_value < 0:
            raise CliUsage("--max-value must be nonnegative")
        seq = generate(args.alpha, max_value=args.max_value)
        terms = seq.values_up_to(args.max_value)
        horizon = {"max_value": str(args.max_value)}
    if args.format == "json":
        doc = output.document(
            "sequence", output.sequence_payload(seq, terms), alpha=args.alpha, horizon=horizon
        )
        _emit(output.dumps(doc))
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["index", "term"])
        for i, t in enumerate(terms):
            writer.writerow([i, str(t)])
        _emit(buf.getvalue())
    else:
        _emit(",".join(str(t) for t in terms) + "\n")
    return 0


def cmd_window(args) -> int:
    if args.index < 1:
        raise CliUsage("--index must be >= 1")
    seq = generate(args.alpha, count=max(2, args.index + 1))
    w = window(seq, args.index)
    doc = output.document(
        "windows", output.window_payload(seq, w), alpha=args.alpha, horizon={"index": args.index}
    )
    _emit(output.dumps(doc))
    return 0


def cmd_zeck(args) -> int:
    if args.n < 1:
        raise CliUsage("--n must be positive")
    seq = generate(args.alpha, count=2)
    z = zeckendorf(seq, args.n)
    doc = output.document(
        "zeckendorf", output.zeckendorf_payload(z), alpha=args.alpha, horizon={"n": str(args.n)}
    )
    _emit(output.dumps(doc))
    return 0


def cmd_classify(args) -> int:
    if args.pile < 0:
        raise CliUsage("--pile must be nonnegative")
    state = (
        initial_state(args.alpha, args.pile)
        if args.cap is None
        else GameState(args.pile, args.cap, args.alpha)
    )
    solver = Solver(args.alpha, pile_limit=args.limit)
    outcome = solver.classify_state(state)
    advice = solver.best_move(state) if state.pile >= 1 else None
    doc = output.document(
        "classify",
        output.classify_payload(state, outcome, advice),
        alpha=args.alpha,
        horizon={"pile": str(args.pile), "cap": str(state.cap)},
    )
    _emit(output.dumps(doc))
    return 0


def cmd_s_seq(args) -> int:
    if args.count < 1:
        raise CliUsage("--count must be positive")
    seq = generate(args.alpha, count=max(2, args.count + 2))
    values = s_sequence(seq, args.count)
    doc = output.document(
        "s-sequence", output.s_sequence_payload(values), alpha=args.alpha, horizon={"count": args.count}
    )
    _emit(output.dumps(doc))
    return 0


def cmd_cutoffs(args) -> int:
    if not 1 <= args.from_ < args.to:
        raise CliUsage("need 1 <= --from < --to")
    cache, cache_path = _load_cache(args.cache, args.no_cache)
    census = enumerate_cutoffs(args.from_, args.to, cache=cache, jobs=args.jobs)
    _store_cache(cache, cache_path)
    doc = output.document(
        "cutoffs",
        output.cutoffs_payload(args.from_, args.to, census),
        horizon={"from": output.frac_str(args.from_), "to": output.frac_str(args.to)},
    )
    _emit(output.dumps(doc), args.out)
    return 0


def cmd_gamma(args) -> int:
    if args.upto < Fraction(5, 2):
        raise CliUsage("--upto must be at least 5/2")
    cache, cache_path = _load_cache(args.cache, args.no_cache)
    census = enumerate_cutoffs(1, args.upto, cache=cache, jobs=args.jobs)
    _store_cache(cache, cache_path)
    if args.format == "json":
        doc = output.document(
            "gamma",
            output.gamma_payload(census, args.upto),
            horizon={"upto": output.frac_str(args.upto)},
        )
        _emit(output.dumps(doc), args.out)
        return 0
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["n", "gamma", "gamma_over_n_squared"])
    for row in output.gamma_rows(census, args.upto):
        writer.writerow(row)
    _emit(buf.getvalue(), args.out)
    return 0


def cmd_diag(args) -> int:
    if args.count < 1:
        raise CliUsage("--count must be positive")
    report = oscillation_diagnostic(args.alpha, args.count)
    seq = generate(args.alpha, count=16)
    info = detect_recurrence(seq)
    doc = output.document(
        "diagnostics",
        output.diagnostics_payload(report, info),
        alpha=args.alpha,
        horizon={"count": args.count},
    )
    _emit(output.dumps(doc))
    return 0


def cmd_play(args) -> int:
    if args.pile < 0:
        raise CliUsage("--pile must be nonnegative")
    alpha = args.alpha
    solver = Solver(alpha)
    state = initial_state(alpha, args.pile)
    print(f"pile {state.pile}, you may take 1..{state.legal_max}")
    if state.legal_max > 0:
        if state.pile <= solver.pile_limit:
            losing = solver.classify_state(state) == "P"
        else:
            losing = not solver.best_move(state).winning
        if losing:
            print("warning: you face a losing position against perfect play")
    while True:
        if state.legal_max == 0:
            print("you cannot move: engine wins")
            return 0
        try:
            raw = input(f"your take (1..{state.legal_max}): ").strip()
        except EOFError:
            print("\nbye")
            return 0
        if raw in {"q", "quit", "exit"}:
            print("bye")
            return 0
        try:
            take = int(raw)
        except ValueError:
            print("enter a number")
            continue
        if not state.is_legal(take):
            print(f"illegal: legal range is 1..{state.legal_max}")
            continue
        state = state.successor(take)
        print(f"you took {take}; pile {state.pile}")
        if state.pile == 0:
            print("you took the last stone: you win")
            return 0
        advice = solver.best_move(state)
        note = " (theory-derived)" if advice.theory_derived else ""
        state = state.successor(advice.take)
        print(f"engine takes {advice.take}{note}; pile {state.pile}, cap {state.cap}")
        if state.pile == 0:
            print("engine took the last stone: engine wins")
            return 0


def cmd_serve(args) -> int:
    from .server import run

    run(
        host=args.host,
        port=args.port,
        static_dir=str(args.static) if args.static else None,
        session_timeout=args.session_timeout * 60.0,
    )
    return 0


def cmd_verify(args) -> int:
    cache, cache_path = _load_cache(args.cache, args.no_cache)
    failures = 0

    report = verify_integer_cutoffs(args.integer_max, cache=cache)
    print(f"integers 2..{args.integer_max} are cutoffs: {'ok' if report.ok else 'FAIL'}")
    if not report.ok:
        print(f"  missing: {list(report.missing)}")
        failures += 1

    for n, multiples in ((1, 6), (2, 2)):
        rep = verify_fractional_cutoffs(n, multiples, cache=cache)
        print(f"x + 1/{n} cutoffs for x in multiples of {n}!: {'ok' if rep.ok else 'FAIL'}")
        for check in rep.checks:
            mark = "ok" if check.ok else "FAIL"
            print(
                f"  x={check.x}: {output.frac_str(check.target)} cutoff={check.is_cutoff}"
                f" window-max {check.window_max} (expected {check.expected_window_max}) {mark}"
            )
        if not rep.ok:
            failures += 1

    survey = half_integer_survey(args.half_limit, cache=cache)
    non = [output.frac_str(h) for h in survey.non_cutoffs]
    print(f"half-integers <= {output.frac_str(survey.limit)}: non-cutoffs {non or 'none'}")

    _store_cache(cache, cache_path)
    return VERIFICATION_ERROR if failures else 0


class CliUsage(Exception):
    pass


_COMMANDS = {
    "seq": cmd_seq,
    "window": cmd_window,
    "zeck": cmd_zeck,
    "classify": cmd_classify,
    "s-seq": cmd_s_seq,
    "cutoffs": cmd_cutoffs,
    "gamma": cmd_gamma,
    "diag": cmd_diag,
    "play": cmd_play,
    "serve": cmd_serve,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    try:
        return _COMMANDS[args.command](args)
    except CliUsage as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except CutoffComputationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return VERIFICATION_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
