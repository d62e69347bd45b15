"""Command-line interface.

One command, subcommand style. stdout carries machine-readable output only
(JSON, or CSV where documented); logs go to stderr, with verbosity picked by
the VSC_LOG environment variable (quiet | info | debug).

Exit codes: 0 success, 1 usage error, 2 validation error (offending field on
stderr), 3 exact search gave up (node budget), 4 internal consistency
failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .baseline import classic_greedy, imbalance_report
from .errors import (
    GenSpecError,
    InstanceError,
    InternalCheckError,
    OracleCapError,
    OracleUnknown,
)
from .exact import OracleLimits, exact_solve
from .generate import GenSpec, generate
from .greedy import GreedyConfig, greedy_solve, trace_to_jsonl
from .metrics import bench_corpus, taylor_inequality_check, write_csv
from .model import load_instance, load_solution, save_instance, save_solution, verify_solution

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_UNKNOWN = 3
EXIT_INTERNAL = 4

log = logging.getLogger("vscover")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _configure_logging() -> None:
    level = {"quiet": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}.get(
        os.environ.get("VSC_LOG", "info"), logging.INFO
    )
    logging.basicConfig(
        stream=sys.stderr, level=level, format="%(levelname)s %(message)s", force=True
    )


def _fail(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)


def _load_instance_file(path: str):
    return load_instance(Path(path).read_bytes())


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, ensure_ascii=False))


def _limits(args) -> OracleLimits:
    return OracleLimits(max_sets=args.max_sets, max_nodes=args.max_nodes)


def _add_limit_flags(p) -> None:
    p.add_argument("--max-sets", type=int, default=OracleLimits.max_sets)
    p.add_argument("--max-nodes", type=int, default=OracleLimits.max_nodes)


def _add_gen_flags(p, with_seed: bool) -> None:
    p.add_argument("--kind", choices=["random", "traceroute"], required=True)
    if with_seed:
        p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n", type=int, help="random: universe size before shrinking")
    p.add_argument("--k", type=int, help="random: number of sets")
    p.add_argument("--m", type=int, help="number of agents")
    p.add_argument("--s-min", type=int, default=1, help="random: min set size")
    p.add_argument("--s-max", type=int, help="random: max set size")
    p.add_argument("--w-min", type=int, default=1, help="min agent weight")
    p.add_argument("--w-max", type=int, default=1, help="max agent weight")
    p.add_argument("--nodes", type=int, help="traceroute: graph nodes")
    p.add_argument("--dests", type=int, help="traceroute: destinations per agent")
    p.add_argument("--graph", choices=["gnp", "pa"], default="gnp")
    p.add_argument("--p", type=float, default=0.15, help="traceroute gnp edge probability")
    p.add_argument("--attach", type=int, default=2, help="traceroute pa edges per node")


def _gen_spec(args, seed: int) -> GenSpec:
    return GenSpec(
        kind=args.kind,
        seed=seed,
        n=args.n,
        k=args.k,
        m=args.m,
        s_min=args.s_min,
        s_max=args.s_max,
        w_min=args.w_min,
        w_max=args.w_max,
        nodes=args.nodes,
        dests=args.dests,
        graph=args.graph,
        p=args.p,
        attach=args.attach,
    )


def _build_parser() -> _Parser:
    parser = _Parser(prog="vsc", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="greedy-solve an instance file")
    p.add_argument("instance")
    p.add_argument("--trace", metavar="PATH", help="write per-round trace JSONL here")

    p = sub.add_parser("exact", help="exact minimum objective (small instances)")
    p.add_argument("instance")
    _add_limit_flags(p)

    p = sub.add_parser("baseline", help="ownership-blind greedy and imbalance report")
    p.add_argument("instance")
    _add_limit_flags(p)

    p = sub.add_parser("gen", help="generate a seeded instance")
    _add_gen_flags(p, with_seed=True)

    p = sub.add_parser("verify", help="check a solution file against an instance file")
    p.add_argument("instance")
    p.add_argument("solution")

    p = sub.add_parser("bench", help="diagnostics over a seed range; CSV to file, summary JSON to stdout")
    p.add_argument("--corpus-seeds", required=True, metavar="A..B", help="inclusive seed range")
    _add_gen_flags(p, with_seed=False)
    p.add_argument("--csv", required=True, metavar="PATH")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--claim", action="store_true", help="also run the per-round gain bound (slow)")
    p.add_argument("--findings", metavar="DIR", help="archive violating instances here")
    _add_limit_flags(p)

    p = sub.add_parser("check-taylor", help="verify the scalar envelope inequality")
    p.add_argument("--max", type=int, required=True)

    return parser


def _cmd_solve(args) -> int:
    inst = _load_instance_file(args.instance)
    sol, trace = greedy_solve(inst, GreedyConfig(trace=args.trace is not None))
    if args.trace:
        Path(args.trace).write_text(trace_to_jsonl(trace))
        log.info("trace written to %s", args.trace)
    sys.stdout.write(save_solution(sol).decode("utf-8"))
    return EXIT_OK


def _cmd_exact(args) -> int:
    inst = _load_instance_file(args.instance)
    opt, witness = exact_solve(inst, _limits(args))
    _emit({"opt": opt, "witness": witness})
    return EXIT_OK


def _cmd_baseline(args) -> int:
    inst = _load_instance_file(args.instance)
    cover = classic_greedy(inst)
    report = imbalance_report(inst, cover, _limits(args))
    _emit(report.to_dict())
    return EXIT_OK


def _cmd_gen(args) -> int:
    spec = _gen_spec(args, args.seed)
    inst = generate(spec)
    sys.stdout.write(save_instance(inst).decode("utf-8"))
    return EXIT_OK


def _cmd_verify(args) -> int:
    inst = _load_instance_file(args.instance)
    sol = load_solution(Path(args.solution).read_bytes())
    report = verify_solution(inst, sol)
    _emit(report.to_dict())
    if not report.ok:
        for c in report.failures():
            _fail(f"check {c.name} failed: {c.detail}")
        return EXIT_VALIDATION
    return EXIT_OK


def _parse_seed_range(text: str) -> range:
    try:
        a, b = text.split("..", 1)
        lo, hi = int(a), int(b)
    except ValueError:
        raise GenSpecError(f"bad seed range {text!r}, expected A..B") from None
    if hi < lo:
        raise GenSpecError(f"empty seed range {text!r}")
    return range(lo, hi + 1)


def _cmd_bench(args) -> int:
    seeds = _parse_seed_range(args.corpus_seeds)
    base = _gen_spec(args, seeds.start)
    base.validate()
    log.info("bench: %d seeds, kind=%s, jobs=%d", len(seeds), args.kind, args.jobs)
    records, summary = bench_corpus(
        base,
        seeds,
        limits=_limits(args),
        with_claim=args.claim,
        jobs=args.jobs,
        findings_dir=args.findings,
    )
    with open(args.csv, "w", newline="") as fp:
        write_csv(records, fp)
    log.info("CSV written to %s", args.csv)
    _emit(summary)
    return EXIT_INTERNAL if summary["hard_violations"] else EXIT_OK


def _cmd_check_taylor(args) -> int:
    ok = taylor_inequality_check(args.max)
    print("true" if ok else "false")
    return EXIT_OK if ok else EXIT_INTERNAL


_COMMANDS = {
    "solve": _cmd_solve,
    "exact": _cmd_exact,
    "baseline": _cmd_baseline,
    "gen": _cmd_gen,
    "verify": _cmd_verify,
    "bench": _cmd_bench,
    "check-taylor": _cmd_check_taylor,
}


def main(argv: list[str] | None = None) -> int:
    _configure_logging()
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (InstanceError, GenSpecError, OracleCapError) as exc:
        _fail(str(exc))
        return EXIT_VALIDATION
    except (ValueError, OSError) as exc:
        _fail(str(exc))
        return EXIT_VALIDATION
    except OracleUnknown as exc:
        _fail(f"exact search gave up: {exc}")
        return EXIT_UNKNOWN
    except InternalCheckError as exc:
        _fail(f"internal consistency failure: {exc}")
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
