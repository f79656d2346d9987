"""Counting Bloom filter with entropy estimation straight from the counters.

The filter supports insert, remove, and membership like any counting Bloom
filter. On top of that, the entropy of the inserted multiset can be
estimated from the counter array alone, without the original data: apply
the plugin entropy formula to the per-cell shares and rescale by the hash
count. An exact plugin estimator over raw samples is included for
comparison, along with an ensemble-max rule over independently seeded
filters and a sound detector for counter states that prove collisions.
"""

from .entropy import (
    CollisionDiagnosis,
    EntropyReport,
    SampleHistogram,
    bf_entropy,
    bf_entropy_uncorrected,
    certain_collision,
    ensemble_entropy,
    exact_plugin_entropy,
    filter_entropy,
)
from .errors import (
    BadMagic,
    CbfError,
    CounterOverflow,
    EmptyEnsemble,
    EmptyFilter,
    EmptyInput,
    EmptySample,
    InconsistentState,
    InvalidConfig,
    MixedConfigs,
    NotPresent,
    TruncatedFile,
    UnsupportedVersion,
)
from .filter import (
    COUNTER_MAX,
    CountingBloomFilter,
    FilterConfig,
    fnv1a_64,
    indexes,
)
from .serialization import export_json, load, load_file, save, save_file

__version__ = "0.1.0"

__all__ = [
    "BadMagic",
    "CbfError",
    "CollisionDiagnosis",
    "COUNTER_MAX",
    "CounterOverflow",
    "CountingBloomFilter",
    "EmptyEnsemble",
    "EmptyFilter",
    "EmptyInput",
    "EmptySample",
    "EntropyReport",
    "FilterConfig",
    "InconsistentState",
    "InvalidConfig",
    "MixedConfigs",
    "NotPresent",
    "SampleHistogram",
    "TruncatedFile",
    "UnsupportedVersion",
    "bf_entropy",
    "bf_entropy_uncorrected",
    "certain_collision",
    "ensemble_entropy",
    "exact_plugin_entropy",
    "export_json",
    "filter_entropy",
    "fnv1a_64",
    "indexes",
    "load",
    "load_file",
    "save",
    "save_file",
]
