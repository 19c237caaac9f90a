import itertools

import pytest


def naive_blocks(n, k):
    """All words of length k over range(n), lexicographic."""
    return [tuple(w) for w in itertools.product(range(n), repeat=k)]


def naive_mobius(m):
    out, p, x = 1, 2, m
    while p * p <= x:
        if x % p == 0:
            x //= p
            if x % p == 0:
                return 0
            out = -out
        p += 1
    return -out if x > 1 else out


@pytest.fixture
def rng():
    import numpy as np
    return np.random.default_rng(12345)
