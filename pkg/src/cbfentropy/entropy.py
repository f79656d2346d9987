"""Plugin entropy estimators: exact from a sample, approximate from counters.

The exact estimator is the usual plugin formula ``H = -sum(p_k * log p_k)``
over empirical value frequencies, with ``0 * log 0 == 0``. When the raw
sample is gone but a counting Bloom filter built from it survives, nearly
the same computation still works on the counter array: treat each cell as a
pseudo-value with share ``counters[k] / inserted_count`` (note: divided by
the element count, not by the total of the counters), sum ``-p * log p``
over the nonzero cells, and scale the sum by ``1 / num_hashes``. In a
collision-free filter every distinct element occupies exactly ``num_hashes``
cells, each holding its multiplicity, so every term of the exact formula
appears ``num_hashes`` times and the rescaled sum reproduces the exact
value.

Hash collisions merge cell masses, and merging can only lower the sum, so
the filter estimate never exceeds the exact plugin value (beyond float
rounding). That is also why ``ensemble_entropy`` keeps the maximum over
independently seeded filters: the least-collided filter is the closest.

Cells can hold shares above 1 when one element's hash applications land in
the same cell twice; the formula is applied literally in that case and the
affected term goes negative. No special-casing keeps the arithmetic exactly
reproducible.

Some counter configurations prove that collisions happened. Collision-free
filters group their nonzero cells by counter value into blocks of
``num_hashes`` cells per distinct element, so any value whose cell count is
not divisible by ``num_hashes`` is impossible without a collision.
``certain_collision`` reports exactly those violations: it can miss
collisions, but a positive verdict is always right.

All estimators are pure functions; sums run in cell-index order in plain
64-bit floats so results are reproducible bit-for-bit across platforms.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Any, Iterable, Mapping

from .errors import EmptyEnsemble, EmptyFilter, EmptySample, InconsistentState
from .filter import CountingBloomFilter


def _log(x: float, base: float) -> float:
    # math.log2/log10 are correctly rounded where the generic quotient is not
    if base == 2.0:
        return math.log2(x)
    if base == 10.0:
        return math.log10(x)
    if base == math.e:
        return math.log(x)
    return math.log(x) / math.log(base)


def _check_base(log_base: float) -> None:
    if not log_base > 1.0:
        raise ValueError(f"log_base must be > 1, got {log_base}")


class SampleHistogram:
    """Value -> multiplicity table for a sample of discrete observations."""

    def __init__(self, counts: Mapping[Any, int] | None = None) -> None:
        self.counts: Counter = Counter()
        if counts:
            for value, count in counts.items():
                self.add(value, count)

    @classmethod
    def from_values(cls, values: Iterable[Any]) -> SampleHistogram:
        hist = cls()
        for value in values:
            hist.add(value)
        return hist

    def add(self, value: Any, count: int = 1) -> None:
        if count < 1:
            raise ValueError(f"count must be positive, got {count}")
        self.counts[value] += count

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __len__(self) -> int:
        return len(self.counts)

    def __repr__(self) -> str:
        return f"SampleHistogram(distinct={len(self)}, total={self.total})"


@dataclass
class EntropyReport:
    """Filter-based entropy estimates, plus the exact value when available."""

    uncorrected: float
    corrected: float
    log_base: float
    num_hashes: int
    inserted_count: int
    exact: float | None = None


@dataclass
class CollisionDiagnosis:
    """Verdict of the certain-collision check.

    ``violating_groups`` lists (counter_value, cell_count) pairs whose cell
    count is not divisible by the hash count; ``certain`` is True exactly
    when that list is non-empty.
    """

    certain: bool
    violating_groups: list[tuple[int, int]]


def exact_plugin_entropy(hist: SampleHistogram, log_base: float = 2.0) -> float:
    """Plugin entropy of the sample: -sum(p_k * log p_k) over value shares."""
    _check_base(log_base)
    total = hist.total
    if total == 0:
        raise EmptySample("cannot estimate entropy of an empty sample")
    acc = 0.0
    for count in hist.counts.values():
        share = count / total
        acc += share * _log(share, log_base)
    return -acc + 0.0  # normalize -0.0 for the zero-entropy case


def bf_entropy_uncorrected(
    counters: Iterable[int],
    num_hashes: int,
    inserted_count: int,
    log_base: float = 2.0,
) -> float:
    """Plugin formula applied to the raw counters with shares counters[k] / inserted_count.

    Zero cells contribute nothing. Shares above 1 (an element colliding with
    itself) are fed to the formula as-is. The counter sum must equal
    ``num_hashes * inserted_count`` or the state is corrupt.
    """
    _check_base(log_base)
    if num_hashes < 1:
        raise ValueError(f"num_hashes must be >= 1, got {num_hashes}")
    if inserted_count < 1:
        raise EmptyFilter("cannot estimate entropy of a filter with no elements")
    total = 0
    acc = 0.0
    for value in counters:
        if value:
            total += value
            share = value / inserted_count
            acc += share * _log(share, log_base)
    if total != num_hashes * inserted_count:
        raise InconsistentState(
            f"counter sum {total} != {num_hashes} * {inserted_count}"
        )
    return -acc + 0.0


def bf_entropy(
    counters: Iterable[int],
    num_hashes: int,
    inserted_count: int,
    log_base: float = 2.0,
) -> float:
    """The corrected filter estimate: the uncorrected sum scaled by 1 / num_hashes."""
    return bf_entropy_uncorrected(counters, num_hashes, inserted_count, log_base) / num_hashes


def filter_entropy(filt: CountingBloomFilter, log_base: float = 2.0) -> EntropyReport:
    """Both estimates for a live filter, bundled into a report."""
    num_hashes = filt.config.num_hashes
    uncorrected = bf_entropy_uncorrected(
        filt.counters, num_hashes, filt.inserted_count, log_base
    )
    return EntropyReport(
        uncorrected=uncorrected,
        corrected=uncorrected / num_hashes,
        log_base=log_base,
        num_hashes=num_hashes,
        inserted_count=filt.inserted_count,
    )


def ensemble_entropy(
    filters: Iterable[CountingBloomFilter], log_base: float = 2.0
) -> float:
    """Best corrected estimate across filters summarizing the same multiset.

    Every collision lowers the estimate, so the maximum over independently
    seeded filters is the one to report. Callers are responsible for feeding
    all members the same elements; that cannot be checked from the filters.
    """
    members = list(filters)
    if not members:
        raise EmptyEnsemble("need at least one filter")
    return max(
        bf_entropy(f.counters, f.config.num_hashes, f.inserted_count, log_base)
        for f in members
    )


def certain_collision(counters: Iterable[int], num_hashes: int) -> CollisionDiagnosis:
    """Check whether the counters prove at least one hash collision.

    Groups nonzero cells by counter value; any group whose cell count is not
    a multiple of ``num_hashes`` cannot arise collision-free. The reverse
    does not hold: collisions may leave every group size divisible.
    """
    if num_hashes < 1:
        raise ValueError(f"num_hashes must be >= 1, got {num_hashes}")
    groups = Counter(value for value in counters if value)
    violating = sorted(
        (value, cells) for value, cells in groups.items() if cells % num_hashes != 0
    )
    return CollisionDiagnosis(certain=bool(violating), violating_groups=violating)
