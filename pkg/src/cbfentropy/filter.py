"""Counting Bloom filter with deterministic, seedable double hashing.

A counting Bloom filter keeps a 16-bit counter per cell instead of a single
bit, so elements can be removed as well as inserted (Fan et al., "Summary
cache", 2000). Cell indexes come from the double-hashing construction of
Kirsch & Mitzenmacher (2006): two 64-bit FNV-1a hashes h1 and h2 yield the
sequence (h1 + i * stride) mod size, one index per hash application.

Hashing is a pure function of (seed, size, num_hashes, element bytes), with
no dependence on interpreter hash randomization or platform word size. Two
filters with equal configs fed identical operation sequences are therefore
bit-identical, which both the on-disk format and the entropy estimators
rely on.

Known limitation: FNV-1a applies no mixing after absorbing the final byte,
so two elements that differ only in the lowest bit of their last byte get
h1 values P apart and h2 values P apart in the opposite direction (the
0x01/0x02 domain tags force opposite parity of the pre-multiply state).
The offsets cancel in h1 + stride, so such pairs share their second cell
index at every seed. Real-world keys rarely form such pairs, and every
other bit position avalanches normally, but dense sequential suffixes
("item8"/"item9") will collide more than the random model predicts.

Elements are byte strings. Callers working with text should pick an
encoding (the CLI uses UTF-8 lines) and keep it fixed.
"""

from __future__ import annotations

from array import array
from collections import Counter
from dataclasses import dataclass

from .errors import CounterOverflow, InvalidConfig, NotPresent

FNV64_OFFSET_BASIS = 0xCBF29CE484222325
FNV64_PRIME = 0x100000001B3
_MASK64 = (1 << 64) - 1

COUNTER_MAX = 0xFFFF  # cells are 16-bit; overflow is a checked error


def fnv1a_64(data: bytes) -> int:
    """FNV-1a hash of a byte string, 64-bit variant."""
    value = FNV64_OFFSET_BASIS
    for byte in data:
        value = ((value ^ byte) * FNV64_PRIME) & _MASK64
    return value


@dataclass(frozen=True)
class FilterConfig:
    """Shape of a filter: cell count, hash count, and hash seed.

    The config fully determines the hashing, so filters sharing a config
    agree on every element's cells. ``counter_width`` is fixed at 16 bits;
    the field exists so serialized headers can be validated explicitly.
    """

    size: int
    num_hashes: int
    seed: int = 0
    counter_width: int = 16

    def __post_init__(self) -> None:
        if self.size < 1:
            raise InvalidConfig(f"size must be >= 1, got {self.size}")
        if self.num_hashes < 1:
            raise InvalidConfig(f"num_hashes must be >= 1, got {self.num_hashes}")
        if not 0 <= self.seed < 1 << 64:
            raise InvalidConfig(f"seed must fit in 64 bits, got {self.seed}")
        if self.counter_width != 16:
            raise InvalidConfig(f"only 16-bit counters are supported, got {self.counter_width}")


def indexes(config: FilterConfig, element: bytes) -> tuple[int, ...]:
    """Cell indexes touched by ``element``, one per hash application.

    h1 and h2 are FNV-1a over the seed (8 bytes little-endian), a one-byte
    domain tag (0x01 / 0x02), and the element. The stride h2 mod size is
    bumped to 1 when it degenerates to 0 (and size > 1) so the sequence
    actually walks the array. Repeats are possible and are not deduplicated;
    a repeated index means that cell absorbs several increments per insert.
    """
    tag = config.seed.to_bytes(8, "little")
    h1 = fnv1a_64(tag + b"\x01" + element)
    h2 = fnv1a_64(tag + b"\x02" + element)
    size = config.size
    stride = h2 % size
    if stride == 0 and size > 1:
        stride = 1
    return tuple((h1 + i * stride) % size for i in range(config.num_hashes))


class CountingBloomFilter:
    """Counter array plus the net number of elements inserted.

    The structural invariant ``sum(counters) == num_hashes * inserted_count``
    holds after every successful operation: each insert adds exactly
    ``num_hashes`` increments and each remove takes them back. Operations
    that cannot complete (overflow, removing an absent element) raise before
    touching anything, leaving the filter bit-identical to its prior state.
    """

    def __init__(self, config: FilterConfig) -> None:
        self.config = config
        self.counters = array("H", bytes(2 * config.size))
        self.inserted_count = 0

    def indexes(self, element: bytes) -> tuple[int, ...]:
        return indexes(self.config, element)

    def insert(self, element: bytes) -> None:
        """Increment the element's cells, once per hash application.

        Raises CounterOverflow if any touched cell would exceed the 16-bit
        maximum; the filter is unchanged in that case.
        """
        cells = self.indexes(element)
        counters = self.counters
        for cell, bump in Counter(cells).items():
            if counters[cell] + bump > COUNTER_MAX:
                raise CounterOverflow(
                    f"cell {cell} at {counters[cell]} cannot take {bump} more"
                )
        for cell in cells:
            counters[cell] += 1
        self.inserted_count += 1

    def remove(self, element: bytes) -> None:
        """Decrement the element's cells; the inverse of insert.

        Raises NotPresent if any required cell is too small, i.e. the
        element cannot currently be in the filter; nothing is changed then.
        Removing a never-inserted element may still succeed when other
        elements cover its cells. That is inherent counting-filter
        behavior, not an error this structure can detect.
        """
        cells = self.indexes(element)
        counters = self.counters
        for cell, needed in Counter(cells).items():
            if counters[cell] < needed:
                raise NotPresent(f"cell {cell} holds {counters[cell]}, needs {needed}")
        for cell in cells:
            counters[cell] -= 1
        self.inserted_count -= 1

    def contains(self, element: bytes) -> bool:
        """Membership test: False is definitive, True means "might be present"."""
        counters = self.counters
        return all(counters[cell] for cell in self.indexes(element))

    __contains__ = contains

    def stats(self) -> dict[str, int]:
        """Summary numbers: counter_sum, nonzero_cells, inserted_count, max_counter."""
        counters = self.counters
        return {
            "counter_sum": sum(counters),
            "nonzero_cells": sum(1 for value in counters if value),
            "inserted_count": self.inserted_count,
            "max_counter": max(counters),
        }

    def copy(self) -> CountingBloomFilter:
        duplicate = CountingBloomFilter(self.config)
        duplicate.counters = array("H", self.counters)
        duplicate.inserted_count = self.inserted_count
        return duplicate

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CountingBloomFilter):
            return NotImplemented
        return (
            self.config == other.config
            and self.inserted_count == other.inserted_count
            and self.counters == other.counters
        )

    def __repr__(self) -> str:
        return (
            f"CountingBloomFilter(size={self.config.size},"
            f" num_hashes={self.config.num_hashes}, seed={self.config.seed},"
            f" inserted_count={self.inserted_count})"
        )
