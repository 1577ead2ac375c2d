"""Command-line front end: ``adacover <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from . import __version__
from .analysis import completion_curve, cost_distribution, entropy_bound, huffman_bound, moment_direct
from .bench import (
    KINDS,
    BenchConfig,
    evaluate_instance,
    format_report,
    generate_wiser_like,
    load_instance,
    run_bench,
)
from .core import greedy_policy, masc_greedy_policy
from .errors import AdaCoverError
from .io import format_fraction, format_odt_csv

log = logging.getLogger("adacover")


def _moments(text: str) -> List[int]:
    try:
        vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad moment list {text!r}")
    if not vals or any(v < 1 for v in vals):
        raise argparse.ArgumentTypeError("moments must be integers >= 1")
    return vals


def _quotas(text: str) -> List[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _common(p: argparse.ArgumentParser, with_instance: bool = True) -> None:
    if with_instance:
        p.add_argument("--instance", required=True, help="instance file")
    p.add_argument("--kind", choices=KINDS, default="odt")
    p.add_argument("--moments", type=_moments, default=[1, 2, 3], help="e.g. 1,2,3")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--mc-samples", type=int, default=None, help="Monte-Carlo cascade samples")
    p.add_argument("--quota", type=_quotas, default=None, help="viral quota(s), comma separated")
    p.add_argument("--out", default=None)
    p.add_argument("--format", dest="fmt", choices=("csv", "json"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="adacover", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a random WISER-like ODT matrix as CSV")
    g.add_argument("--m0", type=int, default=415)
    g.add_argument("--n", type=int, default=79)
    g.add_argument("--density", type=float, default=0.5)
    g.add_argument("--unknown-rate", type=float, default=0.1)
    g.add_argument("--variation", type=int, default=0)
    g.add_argument("--restrict", type=int, default=None, help="keep a random subset of tests")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--out", default=None)

    r = sub.add_parser("run", help="run the greedy policy and report its cost moments")
    _common(r)

    b = sub.add_parser("bound", help="entropy and Huffman lower bounds for m hypotheses")
    b.add_argument("--m", type=int, nargs="+", required=True)
    b.add_argument("--moments", type=_moments, default=[1, 2, 3])
    b.add_argument("--per-hypothesis", action="store_true")
    b.add_argument("--format", dest="fmt", choices=("csv", "json"), default="json")
    b.add_argument("--out", default=None)

    o = sub.add_parser("oracle", help="exact optimal objective values (small instances)")
    _common(o)

    bench = sub.add_parser("bench", help="benchmark rows for instances or generated data")
    _common(bench, with_instance=False)
    bench.add_argument("--instance", dest="instances", action="append", default=[],
                       help="instance file (repeatable)")
    bench.add_argument("--oracle", action="store_true")
    bench.add_argument("--generate", action="store_true", help="use the WISER-like generator")
    bench.add_argument("--m0", type=int, default=415)
    bench.add_argument("--n", type=int, default=79)
    bench.add_argument("--density", type=float, default=0.5)
    bench.add_argument("--unknown-rate", type=float, default=0.1)
    bench.add_argument("--variations", type=int, default=5)
    bench.add_argument("--restrict", type=int, default=None)
    bench.set_defaults(fmt="csv")

    c = sub.add_parser("curve", help="export a non-completion curve as CSV")
    _common(c)
    c.add_argument("--function", type=int, default=None, help="utility index (default: termination)")
    return parser


def _policy(inst):
    if len(inst.utilities) > 1:
        return masc_greedy_policy(inst.utilities, inst.distribution, inst.costs)
    return greedy_policy(inst.utility, inst.distribution, inst.costs)


def _load(args):
    return load_instance(args.instance, args.kind, args.quota, args.mc_samples, args.seed)


def cmd_generate(args) -> None:
    rows = generate_wiser_like(args.m0, args.n, args.density, args.unknown_rate, args.seed,
                               variation=args.variation, restrict=args.restrict)
    log.info("generated %d distinct hypotheses", len(rows))
    _emit(format_odt_csv(rows), args.out)


def cmd_run(args) -> None:
    inst = _load(args)
    terminal, per = cost_distribution(_policy(inst), inst.distribution, inst.utilities, inst.costs)
    rec = {"instance": args.instance, "kind": args.kind}
    for p in args.moments:
        rec[f"moment_p{p}"] = moment_direct(terminal, p)
        if len(per) > 1:
            rec[f"masc_p{p}"] = sum(moment_direct(cd, p) for cd in per)
    if args.fmt == "json":
        out = {k: format_fraction(v) if k.startswith(("moment", "masc")) else v for k, v in rec.items()}
        out["cost_atoms"] = [[format_fraction(c), format_fraction(w)] for c, w in terminal.atoms]
        _emit(json.dumps(out, indent=2) + "\n", args.out)
    else:
        _emit(format_report([rec], "csv"), args.out)


def cmd_bound(args) -> None:
    rows = []
    for m in args.m:
        row = {"m": m, "entropy_bound": entropy_bound(m) / (m if args.per_hypothesis else 1)}
        for p in args.moments:
            row[f"huffman_bound_p{p}"] = huffman_bound(m, p, as_total=not args.per_hypothesis)
        rows.append(row)
    _emit(format_report(rows, args.fmt), args.out)


def cmd_oracle(args) -> None:
    inst = _load(args)
    row = evaluate_instance(inst, args.moments, oracle=True, label=Path(args.instance).stem)
    _emit(format_report([row], args.fmt), args.out)


def cmd_bench(args) -> None:
    gen = None
    if args.generate:
        gen = {"m0": args.m0, "n": args.n, "density": args.density,
               "unknown_rate": args.unknown_rate, "variations": args.variations,
               "restrict": args.restrict}
    cfg = BenchConfig(kind=args.kind, instances=args.instances, generator=gen,
                      moments=args.moments, oracle=args.oracle, seed=args.seed,
                      out=args.out, fmt=args.fmt, mc_samples=args.mc_samples, quotas=args.quota)
    rows = run_bench(cfg)
    if not args.out:
        sys.stdout.write(format_report(rows, cfg.fmt))


def cmd_curve(args) -> None:
    inst = _load(args)
    curve = completion_curve(_policy(inst), inst.distribution, inst.utilities, inst.costs,
                             index=args.function)
    _emit(curve.to_csv(), args.out)


COMMANDS = {
    "generate": cmd_generate,
    "run": cmd_run,
    "bound": cmd_bound,
    "oracle": cmd_oracle,
    "bench": cmd_bench,
    "curve": cmd_curve,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        COMMANDS[args.command](args)
    except (AdaCoverError, ValueError, OSError) as exc:
        print(f"adacover: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
