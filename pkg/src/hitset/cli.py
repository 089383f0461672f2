"""Command-line interface.

Subcommands: enumerate, verify, bench, generate.  Exit codes are stable:
0 success, 1 usage or parse error, 2 timeout, 3 memory exhaustion,
4 verification mismatch.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .bench import (
    cross_validate,
    parse_config,
    run_benchmark,
    run_cell,
    write_records_csv,
    emit_table,
)
from .enumeration import (
    ALGORITHM_NAMES,
    STATUS_MEMORY,
    STATUS_OK,
    STATUS_TIMEOUT,
    enumerate_mhs,
)
from .errors import ParseError, ValidationError
from .family import MhsCollection, make_family
from .formats import collection_to_text, detect_format, family_to_text, read_family
from .generators import matching_graph, random_family
from .oracle import DEFAULT_ORACLE_LIMIT, brute_force_mhs, check_duality

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_TIMEOUT = 2
EXIT_MEMORY = 3
EXIT_MISMATCH = 4


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; the documented usage code is 1
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="hitset", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_enum = sub.add_parser("enumerate", help="run one algorithm on a family")
    p_enum.add_argument("--input", required=True)
    p_enum.add_argument("--format", choices=("json", "dat"))
    p_enum.add_argument("--algorithm", required=True)
    p_enum.add_argument("--cutoff", type=int)
    p_enum.add_argument("--threads", type=int, default=1)
    p_enum.add_argument("--count-only", action="store_true")
    p_enum.add_argument("--output")
    p_enum.add_argument("--timeout", type=float,
                        help="wall-clock limit in seconds (runs in a child process)")

    p_verify = sub.add_parser("verify", help="compare a result against the brute-force oracle")
    p_verify.add_argument("--input", required=True)
    p_verify.add_argument("--format", choices=("json", "dat"))
    group = p_verify.add_mutually_exclusive_group(required=True)
    group.add_argument("--algorithm")
    group.add_argument("--candidate", help="collection file to check instead of running an algorithm")
    p_verify.add_argument("--cutoff", type=int)
    p_verify.add_argument("--oracle-limit", type=int, default=DEFAULT_ORACLE_LIMIT)

    p_bench = sub.add_parser("bench", help="run the benchmark harness")
    p_bench.add_argument("--config", required=True)
    p_bench.add_argument("--out", required=True, help="output directory")
    p_bench.add_argument("--no-figures", action="store_true")

    p_gen = sub.add_parser("generate", help="emit a synthetic family as json")
    gen_sub = p_gen.add_subparsers(dest="kind", required=True)
    g_match = gen_sub.add_parser("matching")
    g_match.add_argument("n", type=int)
    g_rand = gen_sub.add_parser("random")
    for name in ("m", "n", "min_size", "max_size", "seed"):
        g_rand.add_argument(name, type=int)
    return parser


def _check_algorithm(name: str) -> str | None:
    if name not in ALGORITHM_NAMES:
        print(
            f"unknown algorithm {name!r}; valid names: {', '.join(ALGORITHM_NAMES)}",
            file=sys.stderr,
        )
        return None
    return name


def _cmd_enumerate(args) -> int:
    family = read_family(args.input, args.format)
    if _check_algorithm(args.algorithm) is None:
        return EXIT_USAGE
    if args.timeout is not None:
        start = time.perf_counter()
        cell = run_cell(family, args.algorithm, args.cutoff, args.threads,
                        args.timeout, retain_limit=None)
        elapsed = cell.elapsed if cell.elapsed is not None else time.perf_counter() - start
        if cell.status == STATUS_TIMEOUT:
            print(f"timed out after {args.timeout}s", file=sys.stderr)
            return EXIT_TIMEOUT
        if cell.status == STATUS_MEMORY:
            print("memory exhausted", file=sys.stderr)
            return EXIT_MEMORY
        if cell.status != STATUS_OK:
            print(f"run failed: {cell.error}", file=sys.stderr)
            return EXIT_USAGE
        count = cell.count
        collection = MhsCollection(family.fingerprint(), cell.sets,
                                   complete=args.cutoff is None)
    else:
        outcome = enumerate_mhs(family, args.algorithm, cutoff=args.cutoff,
                                workers=args.threads, count_only=args.count_only)
        count = outcome.count
        elapsed = outcome.elapsed_seconds
        collection = outcome.collection
    print(f"count={count} wall={elapsed:.3f}s", file=sys.stderr)
    if not args.count_only:
        fmt = args.format or (detect_format(args.output) if args.output else "json")
        text = collection_to_text(collection, fmt)
        if args.output:
            Path(args.output).write_text(text)
        else:
            sys.stdout.write(text)
    return EXIT_OK


def _cmd_verify(args) -> int:
    family = read_family(args.input, args.format)
    if family.universe_size > args.oracle_limit:
        print(
            f"refusing: universe size {family.universe_size} exceeds the oracle "
            f"limit {args.oracle_limit}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    if args.algorithm is not None:
        if _check_algorithm(args.algorithm) is None:
            return EXIT_USAGE
        outcome = enumerate_mhs(family, args.algorithm, cutoff=args.cutoff)
        got = set(outcome.collection.sets)
        want = set(brute_force_mhs(family, cutoff=args.cutoff,
                                   limit=args.oracle_limit).sets)
        if got == want:
            print(f"match: {len(want)} minimal hitting sets", file=sys.stderr)
            return EXIT_OK
        diff = sorted(got ^ want)
        side = "extra" if diff[0] in got else "missing"
        print(f"mismatch: {side} set {list(diff[0])}", file=sys.stderr)
        return EXIT_MISMATCH
    candidate = read_family(args.candidate, None)
    g = make_family(candidate.sets, universe_size=max(candidate.universe_size,
                                                      family.universe_size))
    verdict = check_duality(family, g, limit=args.oracle_limit)
    if verdict.equal:
        print("match: candidate equals the oracle collection", file=sys.stderr)
        return EXIT_OK
    print(f"mismatch ({verdict.kind}): witness {list(verdict.witness)}", file=sys.stderr)
    return EXIT_MISMATCH


def _cmd_bench(args) -> int:
    config = parse_config(args.config)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    records, outputs = run_benchmark(config)
    write_records_csv(records, out_dir / "records.csv")
    (out_dir / "tables.txt").write_text(emit_table(records, "text"))
    (out_dir / "tables.csv").write_text(emit_table(records, "csv"))
    verdicts = cross_validate(records, outputs)
    lines = []
    for (dataset, cutoff), verdict in sorted(
            verdicts.items(), key=lambda kv: (kv[0][0], kv[0][1] is not None, kv[0][1] or 0)):
        tag = f"{dataset} cutoff={'none' if cutoff is None else cutoff}"
        lines.append(f"{tag}: {verdict.status} ({verdict.detail})")
        if verdict.witness is not None:
            lines.append(f"  differing set: {list(verdict.witness)}")
    (out_dir / "cross_validation.txt").write_text("\n".join(lines) + "\n" if lines else "")
    if not args.no_figures:
        from .plots import render_benchmark_figures

        render_benchmark_figures(records, out_dir)
    ok = sum(1 for r in records if r.status == STATUS_OK)
    print(f"{len(records)} cells ({ok} ok) -> {out_dir}", file=sys.stderr)
    mismatches = [v for v in verdicts.values() if v.status == "mismatch"]
    if mismatches:
        print(f"cross-validation found {len(mismatches)} mismatching cells",
              file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def _cmd_generate(args) -> int:
    if args.kind == "matching":
        family = matching_graph(args.n)
    else:
        family = random_family(args.m, args.n, (args.min_size, args.max_size), args.seed)
    sys.stdout.write(family_to_text(family, "json"))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "enumerate":
            return _cmd_enumerate(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "bench":
            return _cmd_bench(args)
        return _cmd_generate(args)
    except (ParseError, ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
