"""Exception types shared across the library."""


class CbfError(Exception):
    """Base class for every error this package raises on purpose."""


class InvalidConfig(CbfError):
    """Filter configuration violates a structural requirement."""


class CounterOverflow(CbfError):
    """Insert would push a 16-bit cell past its maximum; filter left unchanged."""


class NotPresent(CbfError):
    """Remove would drive a cell negative; filter left unchanged."""


class EmptySample(CbfError):
    """Entropy of an empty sample is undefined."""


class EmptyFilter(CbfError):
    """Entropy of a filter with no insertions is undefined."""


class EmptyEnsemble(CbfError):
    """Ensemble estimate needs at least one filter."""


class InconsistentState(CbfError):
    """Counter sum does not match num_hashes * inserted_count (corrupt data)."""


class BadMagic(CbfError):
    """Stream does not start with the CBF1 magic bytes."""


class UnsupportedVersion(CbfError):
    """File declares a format version or counter width this reader cannot handle."""


class TruncatedFile(CbfError):
    """Stream ended before the declared header and counter block."""


class MixedConfigs(CbfError):
    """Filters combined into one report disagree on size or hash count."""


class EmptyInput(CbfError):
    """Input corpus contained no usable lines."""
