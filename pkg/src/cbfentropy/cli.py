"""Command-line front end: build filters from line corpora and report on them.

Elements are whole input lines (UTF-8 bytes, one trailing newline stripped,
empty lines skipped with a warning). Exit codes: 0 on success or a
maybe-present query, 1 for a definitive-absent query or a violated
comparison invariant, 2 for usage, IO, and data errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .entropy import (
    SampleHistogram,
    certain_collision,
    exact_plugin_entropy,
    filter_entropy,
)
from .errors import CbfError, CounterOverflow, EmptyInput, MixedConfigs
from .filter import CountingBloomFilter, FilterConfig
from .serialization import load_file, save_file

EXIT_OK = 0
EXIT_VIOLATION = 1  # query: definitely absent; compare: estimate above exact
EXIT_ERROR = 2

LOG_BASES = {"2": 2.0, "e": math.e, "10": 10.0}
GAP_TOLERANCE = 1e-9


def _g(value: float) -> float:
    """Round to 12 significant digits so reports are byte-stable."""
    return float(f"{value:.12g}")


def _read_elements(path: str) -> tuple[list[tuple[int, bytes]], int]:
    """Input lines as (line_number, element) pairs plus the skipped-empty count."""
    stream = sys.stdin.buffer if path == "-" else open(path, "rb")
    try:
        elements = []
        skipped = 0
        for lineno, raw in enumerate(stream, start=1):
            line = raw.removesuffix(b"\n")
            if not line:
                skipped += 1
                continue
            elements.append((lineno, line))
        return elements, skipped
    finally:
        if path != "-":
            stream.close()


def _read_corpus(path: str) -> list[tuple[int, bytes]]:
    elements, skipped = _read_elements(path)
    if skipped:
        print(f"warning: skipped {skipped} empty line(s)", file=sys.stderr)
    if not elements:
        raise EmptyInput("input contained no elements")
    return elements


def _build_members(
    elements: list[tuple[int, bytes]], args: argparse.Namespace
) -> list[CountingBloomFilter]:
    """One filter per ensemble member, seeds args.seed .. args.seed + N - 1."""
    members = []
    for offset in range(args.ensemble):
        config = FilterConfig(size=args.size, num_hashes=args.hashes, seed=args.seed + offset)
        filt = CountingBloomFilter(config)
        for lineno, element in elements:
            try:
                filt.insert(element)
            except CounterOverflow as exc:
                raise CounterOverflow(f"line {lineno}: {exc}") from exc
        members.append(filt)
    return members


def cmd_build(args: argparse.Namespace) -> int:
    elements = _read_corpus(args.input)
    members = _build_members(elements, args)
    rows = []
    for offset, filt in enumerate(members):
        path = f"{args.output}.{offset}.cbf"
        save_file(filt, path)
        stats = filt.stats()
        rows.append(
            {
                "path": path,
                "seed": filt.config.seed,
                "size": filt.config.size,
                "m": filt.config.num_hashes,
                "inserted_count": stats["inserted_count"],
                "counter_sum": stats["counter_sum"],
                "nonzero_cells": stats["nonzero_cells"],
                "max_counter": stats["max_counter"],
            }
        )
    if args.format == "json":
        print(json.dumps({"files": rows}, separators=(",", ":")))
    else:
        for row in rows:
            print(
                f"wrote {row['path']}: seed={row['seed']} size={row['size']}"
                f" hashes={row['m']} inserted_count={row['inserted_count']}"
                f" counter_sum={row['counter_sum']} nonzero_cells={row['nonzero_cells']}"
                f" max_counter={row['max_counter']}"
            )
    return EXIT_OK


def _load_matching(paths: list[str]) -> list[CountingBloomFilter]:
    filters = [load_file(path) for path in paths]
    first = filters[0].config
    for path, filt in zip(paths, filters):
        if filt.config.size != first.size or filt.config.num_hashes != first.num_hashes:
            raise MixedConfigs(
                f"{path}: size/hashes ({filt.config.size}, {filt.config.num_hashes})"
                f" differ from {paths[0]} ({first.size}, {first.num_hashes})"
            )
    return filters


def cmd_entropy(args: argparse.Namespace) -> int:
    filters = _load_matching(args.filters)
    base = LOG_BASES[args.log_base]
    reports = [filter_entropy(filt, base) for filt in filters]
    best = max(range(len(reports)), key=lambda i: reports[i].corrected)
    per_filter = [
        {
            "path": path,
            "seed": filt.config.seed,
            "uncorrected": _g(report.uncorrected),
            "corrected": _g(report.corrected),
            "c": report.inserted_count,
        }
        for path, filt, report in zip(args.filters, filters, reports)
    ]
    if args.format == "json":
        payload = {
            "uncorrected": _g(reports[best].uncorrected),
            "corrected": _g(reports[best].corrected),
            "exact": None,
            "log_base": _g(base),
            "m": filters[0].config.num_hashes,
            "c": reports[best].inserted_count,
            "per_filter": per_filter,
        }
        print(json.dumps(payload, separators=(",", ":")))
    else:
        for row in per_filter:
            print(
                f"{row['path']}: seed={row['seed']} c={row['c']}"
                f" uncorrected={row['uncorrected']:.12g} corrected={row['corrected']:.12g}"
            )
        print(f"ensemble_max: corrected={_g(reports[best].corrected):.12g}")
    return EXIT_OK


def cmd_entropy_exact(args: argparse.Namespace) -> int:
    elements = _read_corpus(args.input)
    hist = SampleHistogram.from_values(element for _, element in elements)
    base = LOG_BASES[args.log_base]
    value = exact_plugin_entropy(hist, base)
    if args.format == "json":
        payload = {
            "exact": _g(value),
            "log_base": _g(base),
            "distinct_values": len(hist),
            "total": hist.total,
        }
        print(json.dumps(payload, separators=(",", ":")))
    else:
        print(f"{value:.12g}")
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    elements = _read_corpus(args.input)
    hist = SampleHistogram.from_values(element for _, element in elements)
    base = LOG_BASES[args.log_base]
    exact = exact_plugin_entropy(hist, base)
    members = _build_members(elements, args)
    reports = [filter_entropy(filt, base) for filt in members]
    ensemble = max(report.corrected for report in reports)
    gaps = [exact - report.corrected for report in reports]
    violation = any(gap < -GAP_TOLERANCE for gap in gaps)
    per_filter = [
        {
            "seed": filt.config.seed,
            "uncorrected": _g(report.uncorrected),
            "corrected": _g(report.corrected),
            "gap": _g(gap),
        }
        for filt, report, gap in zip(members, reports, gaps)
    ]
    if args.format == "json":
        payload = {
            "exact": _g(exact),
            "log_base": _g(base),
            "m": args.hashes,
            "c": hist.total,
            "per_filter": per_filter,
            "ensemble_max": _g(ensemble),
            "ensemble_gap": _g(exact - ensemble),
            "violation": violation,
        }
        print(json.dumps(payload, separators=(",", ":")))
    else:
        print(f"exact: {exact:.12g}")
        for row in per_filter:
            print(
                f"seed={row['seed']}: corrected={row['corrected']:.12g}"
                f" gap={row['gap']:.12g}"
            )
        print(f"ensemble_max: corrected={_g(ensemble):.12g} gap={_g(exact - ensemble):.12g}")
    if violation:
        print(
            f"invariant violation: an estimate exceeds the exact entropy"
            f" by more than {GAP_TOLERANCE}",
            file=sys.stderr,
        )
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_collisions(args: argparse.Namespace) -> int:
    filt = load_file(args.filter)
    diagnosis = certain_collision(filt.counters, filt.config.num_hashes)
    if args.format == "json":
        payload = {
            "certain": diagnosis.certain,
            "violating_groups": [list(group) for group in diagnosis.violating_groups],
        }
        print(json.dumps(payload, separators=(",", ":")))
    else:
        print(f"certain: {'true' if diagnosis.certain else 'false'}")
        for value, cells in diagnosis.violating_groups:
            print(f"counter_value={value} cells={cells}")
    return EXIT_OK


def cmd_query(args: argparse.Namespace) -> int:
    filt = load_file(args.filter)
    if filt.contains(args.element.encode("utf-8")):
        print("maybe-present")
        return EXIT_OK
    print("absent")
    return EXIT_VIOLATION


def _add_format(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format", choices=("text", "json"), default="text", help="output format"
    )


def _add_log_base(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--log-base", choices=tuple(LOG_BASES), default="2", help="entropy logarithm base"
    )


def _add_filter_shape(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--size", type=int, required=True, help="number of counter cells")
    parser.add_argument("--hashes", type=int, required=True, help="hash applications per element")
    parser.add_argument("--seed", type=int, default=0, help="base hash seed (default 0)")
    parser.add_argument(
        "--ensemble",
        type=int,
        default=1,
        metavar="N",
        help="independently seeded filters to build (seeds seed..seed+N-1)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cbfentropy",
        description="Build counting Bloom filters from line corpora and "
        "estimate the entropy of the inserted multiset from the counters.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build filter file(s) from input lines")
    p.add_argument("input", nargs="?", default="-", help="corpus path, or - for stdin")
    _add_filter_shape(p)
    p.add_argument("--output", required=True, metavar="STEM", help="output stem; files STEM.<i>.cbf")
    _add_format(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("entropy", help="entropy estimates from filter file(s)")
    p.add_argument("filters", nargs="+", metavar="FILTER", help="filter file(s)")
    _add_log_base(p)
    _add_format(p)
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("entropy-exact", help="exact plugin entropy of input lines")
    p.add_argument("input", nargs="?", default="-", help="corpus path, or - for stdin")
    _add_log_base(p)
    _add_format(p)
    p.set_defaults(func=cmd_entropy_exact)

    p = sub.add_parser("compare", help="exact vs filter estimates on the same input")
    p.add_argument("input", nargs="?", default="-", help="corpus path, or - for stdin")
    _add_filter_shape(p)
    _add_log_base(p)
    _add_format(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("collisions", help="certain-collision diagnosis of a filter file")
    p.add_argument("filter", metavar="FILTER", help="filter file")
    _add_format(p)
    p.set_defaults(func=cmd_collisions)

    p = sub.add_parser("query", help="membership test against a filter file")
    p.add_argument("filter", metavar="FILTER", help="filter file")
    p.add_argument("element", help="element text (hashed as UTF-8 bytes)")
    p.set_defaults(func=cmd_query)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CbfError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
