"""Builders and hypothesis strategies shared across the test modules."""

from hypothesis import strategies as st

from cbfentropy import CountingBloomFilter, FilterConfig, indexes

byte_elements = st.binary(min_size=0, max_size=12)

# counts capped so no random trace can overflow a 16-bit cell
multisets = st.dictionaries(byte_elements, st.integers(1, 20), min_size=1, max_size=50)

small_configs = st.builds(
    FilterConfig,
    size=st.integers(1, 512),
    num_hashes=st.integers(1, 8),
    seed=st.integers(0, 2**64 - 1),
)

roomy_configs = st.builds(
    FilterConfig,
    size=st.integers(4096, 65536),
    num_hashes=st.integers(1, 5),
    seed=st.integers(0, 2**64 - 1),
)


def build_filter(config, multiset):
    filt = CountingBloomFilter(config)
    for element, count in multiset.items():
        for _ in range(count):
            filt.insert(element)
    return filt


def trace_is_collision_free(config, elements):
    """Replay the index sets: every hash application must own its cell alone."""
    owner = {}
    for element in set(elements):
        idxs = indexes(config, element)
        if len(set(idxs)) != len(idxs):
            return False
        for cell in idxs:
            if cell in owner:
                return False
            owner[cell] = element
    return True
