"""Command-line front end: ``racetrack <command> ...``.

Exit codes: 0 success, 2 usage or parameter error, 3 decode failure,
4 verification failure, 5 enumeration budget refused.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from typing import Optional, Sequence

from . import oracle
from .bitword import Word
from .channel import ErrorClass, HeadLayout, random_pattern, read
from .constraints import CodeSpec, count, recommended_t, redundancy, unrank
from .decoders import DECODERS, decode, select_decoder
from .errors import BudgetExceeded, DecodeError, RacetrackError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DECODE = 3
EXIT_VERIFY = 4
EXIT_BUDGET = 5

DECODER_HELP = {
    "identity": "no errors: return the first head",
    "2h1del": "two heads, one deletion (C1)",
    "2hburst": "two heads, one burst of exactly b deletions (C2)",
    "2hleburst": "two heads, one burst of at most b deletions (C3)",
    "mhddel": "d+1 heads, d deletions (C3)",
    "dhddel": "d heads, d deletions, checksum finishes the last one (C3_VT)",
    "sticky": "d+1 heads, d sticky-insertion bursts (C1)",
    "2h1poserr": "two heads, one deletion or one sticky insertion (C1)",
    "3h2poserr": "three heads, up to two position errors of any mix (C3, b=2)",
}


class UsageError(RacetrackError):
    pass


def _out(text: str) -> None:
    sys.stdout.write(text + "\n")


def _spec(args) -> CodeSpec:
    return CodeSpec.parse(args.spec)


def _layout(args) -> HeadLayout:
    text = args.gaps
    if text is None:
        raise UsageError("--gaps is required (use --gaps '' for a single head)")
    return HeadLayout.parse("" if text.strip() == "-" else text)


def _read_heads(args) -> list[Word]:
    if args.heads:
        lines = args.heads
    elif args.heads_file:
        with open(args.heads_file) as fh:
            lines = fh.read().split()
    else:
        lines = sys.stdin.read().split()
    if not lines:
        raise UsageError("no head outputs given")
    return [Word(x) for x in lines]


def _infer_class(spec: CodeSpec, reads: Sequence[Word]) -> ErrorClass:
    """Guess the error class from the output length when --class is omitted."""
    m = len(reads)
    delta = len(reads[0]) - spec.n
    if delta == 0 and len(set(reads)) == 1:
        return ErrorClass.parse("none")
    if delta < 0:
        d = -delta
        if m == d + 1 or (m == d and spec.family == "C3_VT"):
            if m == 2 and spec.family == "C2":
                return ErrorClass.parse(f"burst:{d}")
            if m == 2 and spec.family == "C3" and spec.b > 1:
                return ErrorClass.parse(f"leburst:{spec.b}")
            return ErrorClass.parse(f"del:{d}")
    if m == 3 and spec.family == "C3" and spec.b == 2 and abs(delta) <= 2:
        return ErrorClass.parse("poserr:2")
    if m == 2 and abs(delta) == 1 and spec.family == "C1":
        return ErrorClass.parse("poserr:1")
    if delta > 0:
        return ErrorClass.parse(f"sticky:{m - 1}:{max(spec.t - 1, 1)}")
    raise UsageError("cannot infer the error class; pass --class")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_encode(args) -> int:
    spec = _spec(args)
    if args.bits is not None:
        bits = str(Word(args.bits))
        index = int(bits, 2) if bits else 0
    else:
        index = args.index
    size = count(spec)
    if not 0 <= index < size:
        raise UsageError(f"index {index} out of range: {spec} has {size} codewords")
    _out(str(unrank(spec, index)))
    return EXIT_OK


def cmd_decode(args) -> int:
    spec = _spec(args)
    layout = _layout(args)
    reads = _read_heads(args)
    cls = ErrorClass.parse(args.cls) if args.cls else _infer_class(spec, reads)
    try:
        result = decode(spec, layout, cls, reads, args.decoder)
    except DecodeError as exc:
        reason = type(exc).__name__
        if args.json:
            _out(json.dumps({"ok": False, "error": reason, "message": str(exc)}))
        else:
            print(f"decode failed: {reason}: {exc}", file=sys.stderr)
        return EXIT_DECODE
    if args.json:
        payload = {"ok": True, "class": str(cls), "decoder": args.decoder or select_decoder(spec, layout, cls)}
        payload.update(result.to_dict())
        _out(json.dumps(payload))
    else:
        _out(str(result.codeword))
    return EXIT_OK


def simulate(spec: CodeSpec, layout: HeadLayout, cls: ErrorClass, seed: int, trials: int,
             decoder: Optional[str] = None) -> dict:
    """Seeded round trips: random codeword, random in-class pattern, decode."""
    if trials < 1:
        raise UsageError("--trials must be at least 1")
    name = decoder or select_decoder(spec, layout, cls)
    rng = random.Random(seed)
    size = count(spec)
    failures = []
    for _ in range(trials):
        index = rng.randrange(size)
        c = unrank(spec, index)
        pattern = random_pattern(rng, spec.n, layout, cls)
        reads = read(c, layout, pattern)
        try:
            got = decode(spec, layout, cls, reads, name).codeword
        except DecodeError as exc:
            failures.append({"index": index, "pattern": pattern.to_dict(), "got": f"error: {exc}"})
            continue
        if got != c:
            failures.append({"index": index, "pattern": pattern.to_dict(), "got": str(got)})
    return {
        "spec": str(spec),
        "layout": layout.to_dict(),
        "class": str(cls),
        "decoder": name,
        "seed": seed,
        "trials": trials,
        "successes": trials - len(failures),
        "failures": failures,
    }


def cmd_simulate(args) -> int:
    spec = _spec(args)
    layout = _layout(args)
    cls = ErrorClass.parse(args.cls)
    start = time.perf_counter()
    report = simulate(spec, layout, cls, args.seed, args.trials, args.decoder)
    print(f"wall time {time.perf_counter() - start:.3f}s", file=sys.stderr)
    _out(json.dumps(report, indent=2 if not args.json else None))
    return EXIT_OK if not report["failures"] else EXIT_VERIFY


def cmd_count(args) -> int:
    spec = _spec(args)
    value = count(spec)
    _out(json.dumps({"spec": str(spec), "count": str(value)}) if args.json else str(value))
    return EXIT_OK


def cmd_redundancy(args) -> int:
    spec = _spec(args)
    value = redundancy(spec)
    _out(json.dumps({"spec": str(spec), "redundancy": round(value, 6)}) if args.json else f"{value:.6f}")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.counts:
        report = oracle.verify_counts(n_max=args.n_max)
    else:
        spec = _spec(args)
        layout = _layout(args)
        cls = ErrorClass.parse(args.cls)
        if args.uniqueness:
            report = oracle.verify_uniqueness(spec, layout, cls, budget=args.budget)
        else:
            name = args.decoder or select_decoder(spec, layout, cls)
            report = oracle.verify_decoder(spec, layout, cls, name, budget=args.budget)
    _out(report.to_json(indent=None if args.json else 2))
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_list(args) -> int:
    _out("code families:")
    _out("  C1:n:t          longest run <= t")
    _out("  C2:n:b:t        longest period-b stretch <= t")
    _out("  C3:n:b:t        longest period-l stretch <= t for all l <= b")
    _out("  C3_VT:n:b:t:a   C3 with sum(i*u_i) = a mod n+1")
    _out("error classes:")
    _out("  none, del:d, burst:b, leburst:b, sticky:d:s, poserr:e")
    _out("decoders:")
    for name in DECODERS:
        _out(f"  {name:<11} {DECODER_HELP.get(name, '')}")
    if args.n:
        _out(f"suggested head distance for n={args.n}, b={args.b}:")
        for goal in ("single-deletion", "b-burst", "leq-b-burst"):
            _out(f"  {goal:<16} {recommended_t(args.n, args.b, goal)}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="racetrack", description="Multi-head position-error-correcting codes.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_spec(p, required=True):
        p.add_argument("--spec", required=required, help="code, e.g. C1:9:3 or C3_VT:12:2:6:0")

    def with_layout(p):
        p.add_argument("--gaps", help="comma list of head distances, e.g. 4,4 ('' or - for one head)")

    def with_class(p, required=True):
        p.add_argument("--class", dest="cls", required=required, help="error class, e.g. del:1, burst:2, sticky:2:2")

    p = sub.add_parser("encode", help="map a message index to a codeword")
    with_spec(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--index", type=int, help="index into the lexicographic codebook")
    g.add_argument("--bits", help="message bits, read as a big-endian index")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="recover a codeword from head outputs")
    with_spec(p)
    with_layout(p)
    with_class(p, required=False)
    p.add_argument("--decoder", choices=sorted(DECODERS))
    p.add_argument("--heads-file", help="file with one head output per line")
    p.add_argument("--json", action="store_true", help="print codeword and stage diagnostics as JSON")
    p.add_argument("heads", nargs="*", help="head outputs in head order (default: stdin)")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("simulate", help="seeded encode/channel/decode round trips")
    with_spec(p)
    with_layout(p)
    with_class(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--decoder", choices=sorted(DECODERS))
    p.add_argument("--json", action="store_true", help="compact single-line JSON")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("count", help="exact codebook size")
    with_spec(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("redundancy", help="n - log2(size)")
    with_spec(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_redundancy)

    p = sub.add_parser("verify", help="exhaustive check of a decoder, of uniqueness, or of the counts")
    with_spec(p, required=False)
    with_layout(p)
    with_class(p, required=False)
    p.add_argument("--decoder", choices=sorted(DECODERS))
    p.add_argument("--uniqueness", action="store_true", help="check read-out disjointness instead of a decoder")
    p.add_argument("--counts", action="store_true", help="cross-check all counting routes by enumeration")
    p.add_argument("--n-max", type=int, default=18, help="largest n for --counts")
    p.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET, help="maximum enumerated trials")
    p.add_argument("--json", action="store_true", help="compact single-line JSON")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("list", help="families, error classes, decoders")
    p.add_argument("--n", type=int, help="also print suggested head distances for this n")
    p.add_argument("--b", type=int, default=1)
    p.set_defaults(func=cmd_list)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and not args.counts and not (args.spec and args.cls):
        parser.error("verify needs --spec and --class (or --counts)")
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except DecodeError as exc:
        print(f"decode failed: {exc}", file=sys.stderr)
        return EXIT_DECODE
    except (RacetrackError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
