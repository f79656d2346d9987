"""Entropy estimators and the certain-collision detector."""

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cbfentropy import (
    CountingBloomFilter,
    EmptyEnsemble,
    EmptyFilter,
    EmptySample,
    FilterConfig,
    InconsistentState,
    SampleHistogram,
    bf_entropy,
    bf_entropy_uncorrected,
    certain_collision,
    ensemble_entropy,
    exact_plugin_entropy,
    filter_entropy,
    indexes,
)

import oracles
from helpers import build_filter, multisets, small_configs, trace_is_collision_free

WORKED_COUNTERS = [1, 1, 3, 2, 2]  # reachable with 3 hashes and 3 elements
WORKED_UNCORRECTED = 2 * math.log2(3) - 4 / 3


# --- sample histogram ------------------------------------------------------

def test_histogram_from_values_counts_and_total():
    hist = SampleHistogram.from_values([b"a", b"a", b"b", b"c"])
    assert hist.counts == {b"a": 2, b"b": 1, b"c": 1}
    assert hist.total == 4
    assert len(hist) == 3


def test_histogram_rejects_nonpositive_counts():
    hist = SampleHistogram()
    with pytest.raises(ValueError):
        hist.add(b"a", 0)
    with pytest.raises(ValueError):
        SampleHistogram({b"a": -3})


# --- exact plugin entropy --------------------------------------------------

def test_exact_single_value_is_zero():
    assert exact_plugin_entropy(SampleHistogram({b"A": 8})) == 0.0


def test_exact_uniform_four_values():
    hist = SampleHistogram({b"A": 1, b"B": 1, b"C": 1, b"D": 1})
    assert exact_plugin_entropy(hist) == pytest.approx(2.0, abs=1e-12)


def test_exact_skewed_half_quarter_quarter():
    hist = SampleHistogram({b"A": 2, b"B": 1, b"C": 1})
    assert exact_plugin_entropy(hist) == pytest.approx(1.5, abs=1e-12)


def test_exact_empty_sample_rejected():
    with pytest.raises(EmptySample):
        exact_plugin_entropy(SampleHistogram())


def test_exact_bad_log_base_rejected():
    with pytest.raises(ValueError):
        exact_plugin_entropy(SampleHistogram({b"A": 1}), log_base=1.0)


@given(st.lists(st.integers(1, 50), min_size=1, max_size=40))
def test_exact_matches_bruteforce_reference(counts):
    hist = SampleHistogram({f"v{i}".encode(): n for i, n in enumerate(counts)})
    assert exact_plugin_entropy(hist) == pytest.approx(
        oracles.plugin_entropy(counts), abs=1e-9
    )


@given(st.lists(st.integers(1, 50), min_size=1, max_size=40))
def test_exact_duplication_invariance(counts):
    hist = SampleHistogram({f"v{i}".encode(): n for i, n in enumerate(counts)})
    doubled = SampleHistogram({f"v{i}".encode(): 2 * n for i, n in enumerate(counts)})
    assert exact_plugin_entropy(hist) == pytest.approx(
        exact_plugin_entropy(doubled), abs=1e-12
    )


@pytest.mark.parametrize("base", [math.e, 10.0, 3.0])
def test_exact_log_base_consistency(base):
    hist = SampleHistogram({b"A": 5, b"B": 3, b"C": 1, b"D": 1})
    in_bits = exact_plugin_entropy(hist, 2.0)
    assert exact_plugin_entropy(hist, base) == pytest.approx(
        in_bits / math.log2(base), rel=1e-9
    )


# --- filter entropy --------------------------------------------------------

def test_uncorrected_worked_example():
    value = bf_entropy_uncorrected(WORKED_COUNTERS, 3, 3)
    assert value == pytest.approx(WORKED_UNCORRECTED, abs=1e-9)


def test_corrected_worked_example():
    value = bf_entropy(WORKED_COUNTERS, 3, 3)
    assert value == pytest.approx(WORKED_UNCORRECTED / 3, abs=1e-9)


def test_single_distinct_element_zero_entropy():
    # one element inserted c times over distinct cells: every share is 1
    assert bf_entropy_uncorrected([5, 0, 5, 5], 3, 5) == 0.0
    assert bf_entropy([5, 0, 5, 5], 3, 5) == 0.0


def test_uniform_four_collision_free_equals_scaled_exact():
    config = FilterConfig(size=4096, num_hashes=2, seed=0)
    multiset = {b"alpha": 1, b"beta": 1, b"gamma": 1, b"delta": 1}
    assert trace_is_collision_free(config, multiset)
    filt = build_filter(config, multiset)
    assert bf_entropy_uncorrected(filt.counters, 2, 4) == pytest.approx(4.0, abs=1e-9)
    assert bf_entropy(filt.counters, 2, 4) == pytest.approx(2.0, abs=1e-9)


def test_share_above_one_applied_literally():
    # both hash applications in one cell: share is 2 and the term flips sign
    assert bf_entropy_uncorrected([2], 2, 1) == -2.0
    assert bf_entropy([2], 2, 1) == -1.0


def test_empty_filter_rejected():
    with pytest.raises(EmptyFilter):
        bf_entropy_uncorrected([0, 0], 2, 0)
    with pytest.raises(EmptyFilter):
        filter_entropy(CountingBloomFilter(FilterConfig(size=8, num_hashes=2)))


def test_inconsistent_counter_sum_rejected():
    with pytest.raises(InconsistentState):
        bf_entropy_uncorrected([1, 1, 1], 2, 2)


def test_bad_arguments_rejected():
    with pytest.raises(ValueError):
        bf_entropy_uncorrected([2], 0, 2)
    with pytest.raises(ValueError):
        bf_entropy_uncorrected([2, 2], 2, 2, log_base=0.5)


@given(small_configs, multisets)
@settings(max_examples=100)
def test_correction_identity_is_exact(config, multiset):
    filt = build_filter(config, multiset)
    uncorrected = bf_entropy_uncorrected(
        filt.counters, config.num_hashes, filt.inserted_count
    )
    corrected = bf_entropy(filt.counters, config.num_hashes, filt.inserted_count)
    assert corrected == uncorrected / config.num_hashes


@given(small_configs, multisets)
@settings(max_examples=100)
def test_underestimation_never_exceeds_exact(config, multiset):
    filt = build_filter(config, multiset)
    estimate = bf_entropy(filt.counters, config.num_hashes, filt.inserted_count)
    exact = exact_plugin_entropy(SampleHistogram(multiset))
    assert estimate <= exact + 1e-9


@given(small_configs, multisets)
@settings(max_examples=50)
def test_insert_everything_twice_leaves_estimate_unchanged(config, multiset):
    once = build_filter(config, multiset)
    twice = build_filter(config, {e: 2 * n for e, n in multiset.items()})
    assert bf_entropy(
        once.counters, config.num_hashes, once.inserted_count
    ) == bf_entropy(twice.counters, config.num_hashes, twice.inserted_count)


def test_filter_entropy_report_fields():
    config = FilterConfig(size=1024, num_hashes=3, seed=0)
    multiset = {b"alpha": 2, b"beta": 1, b"gamma": 1}
    assert trace_is_collision_free(config, multiset)
    report = filter_entropy(build_filter(config, multiset))
    assert report.corrected == report.uncorrected / 3
    assert report.exact is None
    assert report.log_base == 2.0
    assert report.num_hashes == 3
    assert report.inserted_count == 4
    assert report.corrected == pytest.approx(1.5, abs=1e-9)


def test_filter_entropy_single_insert_is_zero():
    config = FilterConfig(size=64, num_hashes=3, seed=0)
    assert len(set(indexes(config, b"e0"))) == 3
    filt = CountingBloomFilter(config)
    filt.insert(b"e0")
    assert filter_entropy(filt).corrected == 0.0


# --- ensemble --------------------------------------------------------------

def test_ensemble_singleton_equals_member():
    filt = build_filter(FilterConfig(size=256, num_hashes=2, seed=5), {b"a": 3, b"b": 1})
    member = bf_entropy(filt.counters, 2, 4)
    assert ensemble_entropy([filt]) == member


def test_ensemble_of_identical_copies_is_idempotent():
    filt = build_filter(FilterConfig(size=256, num_hashes=2, seed=5), {b"a": 3, b"b": 1})
    assert ensemble_entropy([filt, filt.copy(), filt.copy()]) == ensemble_entropy([filt])


def test_ensemble_dominates_members_and_respects_exact():
    # 100 draws from a Zipf-like law over 40 values, filters seeded 0..3
    rng = random.Random(13)
    values = sorted({rng.randbytes(6) for _ in range(50)})[:40]
    weights = [1 / rank for rank in range(1, len(values) + 1)]
    multiset = {}
    for value in rng.choices(values, weights=weights, k=100):
        multiset[value] = multiset.get(value, 0) + 1
    exact = exact_plugin_entropy(SampleHistogram(multiset))
    members = [
        build_filter(FilterConfig(size=512, num_hashes=3, seed=seed), multiset)
        for seed in range(4)
    ]
    best = ensemble_entropy(members)
    for member in members:
        assert best >= bf_entropy(member.counters, 3, member.inserted_count)
    assert best <= exact + 1e-9


def test_ensemble_rejects_empty_inputs():
    with pytest.raises(EmptyEnsemble):
        ensemble_entropy([])
    with pytest.raises(EmptyFilter):
        ensemble_entropy([CountingBloomFilter(FilterConfig(size=8, num_hashes=2))])


# --- certain-collision detector ---------------------------------------------

def test_detector_worked_example_counters():
    diagnosis = certain_collision(WORKED_COUNTERS, 3)
    assert diagnosis.certain
    assert diagnosis.violating_groups == [(1, 2), (2, 2), (3, 1)]


def test_detector_consistent_single_element_state():
    assert not certain_collision([1, 1, 1], 3).certain


def test_detector_two_hash_overlap_pattern():
    diagnosis = certain_collision([1, 1, 1, 2, 1], 2)
    assert diagnosis.certain
    assert diagnosis.violating_groups == [(2, 1)]


def test_detector_empty_and_zero_counters():
    assert not certain_collision([], 3).certain
    assert not certain_collision([0, 0, 0], 3).certain


def test_detector_overlap_pattern_is_reachable():
    # three singleton elements, two of them sharing exactly one cell
    config = FilterConfig(size=5, num_hashes=2, seed=0)
    trio = [b"w0", b"w1", b"w27"]
    filt = build_filter(config, {element: 1 for element in trio})
    assert sorted(filt.counters) == [1, 1, 1, 1, 2]
    assert certain_collision(filt.counters, 2).certain
    assert oracles.has_shared_cell(5, 2, 0, trio)


@given(small_configs, multisets)
@settings(max_examples=100)
def test_detector_is_sound_on_random_traces(config, multiset):
    filt = build_filter(config, multiset)
    if certain_collision(filt.counters, config.num_hashes).certain:
        assert oracles.has_shared_cell(
            config.size, config.num_hashes, config.seed, list(multiset)
        )


@given(small_configs, multisets)
@settings(max_examples=50)
def test_collision_free_traces_match_exact_and_stay_undetected(config, multiset):
    if not trace_is_collision_free(config, list(multiset)):
        return
    filt = build_filter(config, multiset)
    assert not certain_collision(filt.counters, config.num_hashes).certain
    estimate = bf_entropy(filt.counters, config.num_hashes, filt.inserted_count)
    exact = exact_plugin_entropy(SampleHistogram(multiset))
    assert estimate == pytest.approx(exact, abs=1e-9)


@pytest.mark.parametrize("base", [math.e, 10.0])
def test_filter_entropy_log_base_consistency(base):
    filt = build_filter(FilterConfig(size=128, num_hashes=2, seed=3), {b"a": 3, b"b": 1})
    in_bits = bf_entropy(filt.counters, 2, 4, 2.0)
    assert bf_entropy(filt.counters, 2, 4, base) == pytest.approx(
        in_bits / math.log2(base), rel=1e-9
    )
