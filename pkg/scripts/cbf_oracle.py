#!/usr/bin/env python3
"""Standalone reference tool for CBF1 filter files.

Deliberately imports nothing from the cbfentropy package: the hashing and
the file layout are rebuilt here from their definitions, so agreement
between this tool and the package is evidence that both are right. Used to
generate the checked-in reference fixture and to decode filter files from
tests.

    cbf_oracle.py build  CORPUS OUT.cbf --size N --hashes M [--seed S]
    cbf_oracle.py decode FILE.cbf [--json]
"""

from __future__ import annotations

import argparse
import json
import struct
import sys

FNV_OFFSET = 14695981039346656037
FNV_PRIME = 1099511628211
MASK64 = (1 << 64) - 1

HEADER = struct.Struct("<4sHBBIQQQ")
MAGIC = b"CBF1"


def fnv1a_64(data: bytes) -> int:
    value = FNV_OFFSET
    for byte in data:
        value = ((value ^ byte) * FNV_PRIME) & MASK64
    return value


def cell_indexes(size: int, num_hashes: int, seed: int, element: bytes) -> list[int]:
    tag = seed.to_bytes(8, "little")
    h1 = fnv1a_64(tag + b"\x01" + element)
    h2 = fnv1a_64(tag + b"\x02" + element)
    stride = h2 % size
    if stride == 0 and size > 1:
        stride = 1
    return [(h1 + i * stride) % size for i in range(num_hashes)]


def read_corpus(path: str) -> list[bytes]:
    with open(path, "rb") as stream:
        lines = [raw.removesuffix(b"\n") for raw in stream]
    return [line for line in lines if line]


def build(args: argparse.Namespace) -> int:
    elements = read_corpus(args.corpus)
    counters = [0] * args.size
    for element in elements:
        for idx in cell_indexes(args.size, args.hashes, args.seed, element):
            counters[idx] += 1
            if counters[idx] > 0xFFFF:
                print(f"error: counter {idx} overflowed 16 bits", file=sys.stderr)
                return 2
    header = HEADER.pack(
        MAGIC, 1, 16, 0, args.hashes, args.size, args.seed, len(elements)
    )
    with open(args.out, "wb") as sink:
        sink.write(header)
        sink.write(struct.pack(f"<{args.size}H", *counters))
    print(f"wrote {args.out}: {HEADER.size + 2 * args.size} bytes, c={len(elements)}")
    return 0


def decode(args: argparse.Namespace) -> int:
    with open(args.file, "rb") as source:
        blob = source.read()
    if len(blob) < HEADER.size:
        print("error: short header", file=sys.stderr)
        return 2
    magic, version, width, _reserved, num_hashes, size, seed, inserted = HEADER.unpack(
        blob[: HEADER.size]
    )
    if magic != MAGIC or version != 1 or width != 16:
        print("error: not a CBF1 version-1 file", file=sys.stderr)
        return 2
    expected = HEADER.size + 2 * size
    if len(blob) != expected:
        print(f"error: file is {len(blob)} bytes, expected {expected}", file=sys.stderr)
        return 2
    counters = list(struct.unpack(f"<{size}H", blob[HEADER.size:]))
    consistent = sum(counters) == num_hashes * inserted
    info = {
        "size": size,
        "num_hashes": num_hashes,
        "seed": seed,
        "inserted_count": inserted,
        "counter_sum": sum(counters),
        "sum_consistent": consistent,
        "counters": counters,
    }
    if args.json:
        print(json.dumps(info))
    else:
        for key, value in info.items():
            if key != "counters":
                print(f"{key}: {value}")
        print("counters:", " ".join(map(str, counters)))
    return 0 if consistent else 2


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build")
    p.add_argument("corpus")
    p.add_argument("out")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--hashes", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=build)

    p = sub.add_parser("decode")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=decode)

    args = parser.parse_args()
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
