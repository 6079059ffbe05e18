import random

import numpy as np
import pytest

from mtmetrics import _kernels
from oracles import bf_best_matching, bf_lcs

needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba unavailable")


def random_codes(rng, max_len=12, vocab=4):
    return np.array(
        [rng.randrange(vocab) for _ in range(rng.randrange(max_len + 1))],
        dtype=np.int64,
    )


@needs_numba
def test_lcs_backends_agree():
    rng = random.Random(11)
    for _ in range(300):
        a = random_codes(rng)
        b = random_codes(rng)
        assert _kernels._lcs_numba(a, b) == _kernels._lcs_numpy(a, b)


def test_lcs_numpy_matches_enumeration():
    rng = random.Random(13)
    for _ in range(200):
        a = random_codes(rng, max_len=8, vocab=3)
        b = random_codes(rng, max_len=8, vocab=3)
        assert _kernels._lcs_numpy(a, b) == bf_lcs(list(a), list(b))


def selection_cost(small, big, choice):
    return sum(abs(int(small[i]) - int(big[int(j)])) for i, j in enumerate(choice))


def brute_force_selection_cost(small, big):
    from itertools import combinations

    best = None
    for idxs in combinations(range(big.size), small.size):
        cost = sum(abs(int(small[i]) - int(big[j])) for i, j in enumerate(idxs))
        if best is None or cost < best:
            best = cost
    return best


def random_ascending(rng, low, high, size):
    return np.array(sorted(rng.sample(range(low, high), size)), dtype=np.int64)


@needs_numba
def test_selection_backends_agree():
    rng = random.Random(17)
    for _ in range(300):
        q = rng.randint(1, 8)
        p = rng.randint(1, q)
        big = random_ascending(rng, 0, 50, q)
        small = random_ascending(rng, 0, 50, p)
        numba_choice = _kernels._select_numba(small, big)
        numpy_choice = _kernels._select_numpy(small, big)
        assert list(numba_choice) == list(numpy_choice)


def test_selection_is_minimal():
    rng = random.Random(19)
    for _ in range(200):
        q = rng.randint(1, 7)
        p = rng.randint(1, q)
        big = random_ascending(rng, 0, 40, q)
        small = random_ascending(rng, 0, 40, p)
        choice = _kernels._select_numpy(small, big)
        assert sorted(set(int(c) for c in choice)) == sorted(int(c) for c in choice)
        assert selection_cost(small, big, choice) == brute_force_selection_cost(small, big)


def test_selection_prefers_earliest_on_ties():
    small = np.array([2], dtype=np.int64)
    big = np.array([0, 4], dtype=np.int64)
    assert list(_kernels._select_numpy(small, big)) == [0]
    if _kernels.HAVE_NUMBA:
        assert list(_kernels._select_numba(small, big)) == [0]


def test_resolve_backend():
    assert _kernels._resolve_backend(None) in ("numba", "numpy")
    assert _kernels._resolve_backend("numpy") == "numpy"
    assert _kernels._resolve_backend(" NumPy ") == "numpy"
    with pytest.raises(ValueError):
        _kernels._resolve_backend("cython")


@needs_numba
def test_resolve_backend_numba():
    assert _kernels._resolve_backend("numba") == "numba"


def test_alignment_oracle_through_public_dispatch():
    # End-to-end: dispatching kernel drives mtmetrics.align; compare against
    # the exhaustive matcher.
    from mtmetrics.hlepor import align
    from oracles import scaled_matching_cost

    rng = random.Random(23)
    vocab = "abcd"
    for _ in range(200):
        hyp = [rng.choice(vocab) for _ in range(rng.randrange(9))]
        ref = [rng.choice(vocab) for _ in range(rng.randrange(9))]
        result = align(hyp, ref)
        card, cost = bf_best_matching(hyp, ref)
        assert len(result) == card
        assert scaled_matching_cost(result.pairs, len(hyp), len(ref)) == cost
