"""On-disk format for filters: fixed little-endian header plus raw counters.

Layout of a ``.cbf`` file (all integers little-endian):

    offset  size      field
    0       4         magic, ASCII "CBF1"
    4       2         format version, currently 1
    6       1         counter width in bits, currently 16
    7       1         reserved, written as 0
    8       4         num_hashes
    12      8         size (number of counter cells)
    20      8         seed
    28      8         inserted_count
    36      2 * size  counters, one 16-bit value per cell

A valid file is exactly ``36 + 2 * size`` bytes; trailing data is rejected.
``inserted_count`` is stored rather than recomputed so that load() can
cross-check ``sum(counters) == num_hashes * inserted_count`` and reject
corrupt or tampered files.
"""

from __future__ import annotations

import json
import struct
import sys
from array import array
from typing import BinaryIO

from .errors import BadMagic, InconsistentState, TruncatedFile, UnsupportedVersion
from .filter import CountingBloomFilter, FilterConfig

MAGIC = b"CBF1"
VERSION = 1
_HEADER = struct.Struct("<4sHBBIQQQ")
HEADER_SIZE = _HEADER.size


def _counters_to_le(counters: array) -> bytes:
    if sys.byteorder == "big":
        swapped = array("H", counters)
        swapped.byteswap()
        return swapped.tobytes()
    return counters.tobytes()


def save(filt: CountingBloomFilter, sink: BinaryIO) -> int:
    """Write the filter to ``sink``; returns the number of bytes written."""
    config = filt.config
    header = _HEADER.pack(
        MAGIC,
        VERSION,
        config.counter_width,
        0,
        config.num_hashes,
        config.size,
        config.seed,
        filt.inserted_count,
    )
    sink.write(header)
    sink.write(_counters_to_le(filt.counters))
    return HEADER_SIZE + 2 * config.size


def load(source: BinaryIO) -> CountingBloomFilter:
    """Read a filter back; the exact inverse of save() for valid input."""
    raw = source.read(HEADER_SIZE)
    if len(raw) < HEADER_SIZE:
        raise TruncatedFile(f"header needs {HEADER_SIZE} bytes, got {len(raw)}")
    magic, version, counter_width, _reserved, num_hashes, size, seed, inserted_count = (
        _HEADER.unpack(raw)
    )
    if magic != MAGIC:
        raise BadMagic(f"expected {MAGIC!r}, got {magic!r}")
    if version != VERSION:
        raise UnsupportedVersion(f"version {version} not supported")
    if counter_width != 16:
        raise UnsupportedVersion(f"counter width {counter_width} not supported")
    body = source.read(2 * size)
    if len(body) < 2 * size:
        raise TruncatedFile(f"counter block needs {2 * size} bytes, got {len(body)}")
    if source.read(1):
        raise InconsistentState("trailing data after counter block")
    counters = array("H")
    counters.frombytes(body)
    if sys.byteorder == "big":
        counters.byteswap()
    if sum(counters) != num_hashes * inserted_count:
        raise InconsistentState(
            f"counter sum {sum(counters)} != {num_hashes} * {inserted_count}"
        )
    filt = CountingBloomFilter(FilterConfig(size=size, num_hashes=num_hashes, seed=seed))
    filt.counters = counters
    filt.inserted_count = inserted_count
    return filt


def save_file(filt: CountingBloomFilter, path: str) -> int:
    with open(path, "wb") as sink:
        return save(filt, sink)


def load_file(path: str) -> CountingBloomFilter:
    with open(path, "rb") as source:
        return load(source)


def export_json(filt: CountingBloomFilter) -> str:
    """Human-readable dump with a fixed key order, for diffing and diagnostics."""
    payload = {
        "size": filt.config.size,
        "m": filt.config.num_hashes,
        "seed": filt.config.seed,
        "inserted_count": filt.inserted_count,
        "counters": list(filt.counters),
    }
    return json.dumps(payload, separators=(",", ":"))
