import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import stats

from ilsplit import (
    AlphaPolicy,
    DegenerateWeightsError,
    ParameterError,
    RngState,
    WeightedSampler,
    sample_alpha,
    sample_uniform_subset,
    sample_weighted,
)
from ilsplit.sampling import chunk_size, draw_alphas

DRAWS = 100_000


def test_weighted_frequency():
    s = WeightedSampler([1, 3])
    draws = s.draw(RngState(1), DRAWS)
    assert 0.74 <= np.mean(draws == 1) <= 0.76


def test_weighted_single_support():
    s = WeightedSampler([5])
    rng = RngState(2)
    assert all(sample_weighted(s, rng) == 0 for _ in range(100))


def test_weighted_degenerate():
    with pytest.raises(DegenerateWeightsError):
        WeightedSampler([0, 0])
    with pytest.raises(DegenerateWeightsError):
        WeightedSampler([1, -1])
    with pytest.raises(DegenerateWeightsError):
        WeightedSampler([])


def test_weighted_chi_square():
    weights = np.array([1.0, 2.0, 3.0, 4.0])
    counts = np.bincount(WeightedSampler(weights).draw(RngState(3), DRAWS), minlength=4)
    expected = DRAWS * weights / weights.sum()
    assert stats.chisquare(counts, expected).pvalue > 1e-3


def test_weighted_never_picks_zero_weight():
    s = WeightedSampler([0, 1, 0, 2, 0])
    draws = s.draw(RngState(4), DRAWS)
    assert set(np.unique(draws)) <= {1, 3}
    np.testing.assert_allclose(s.probabilities(), [0, 1 / 3, 0, 2 / 3, 0])


def test_determinism():
    s = WeightedSampler([1, 2, 3])
    a, b = RngState(99), RngState(99)
    np.testing.assert_array_equal(s.draw(a, 50), s.draw(b, 50))
    np.testing.assert_array_equal(sample_uniform_subset(9, 4, a), sample_uniform_subset(9, 4, b))
    assert sample_alpha(AlphaPolicy(), 9, a) == sample_alpha(AlphaPolicy(), 9, b)


def test_spawn_streams_differ_and_repeat():
    first = [r.uniform(5) for r in RngState(7).spawn(3)]
    second = [r.uniform(5) for r in RngState(7).spawn(3)]
    for x, y in zip(first, second):
        np.testing.assert_array_equal(x, y)
    assert not np.array_equal(first[0], first[1])


def test_seed_range():
    with pytest.raises(ParameterError):
        RngState(-1)
    with pytest.raises(ParameterError):
        RngState(2**64)
    RngState(2**64 - 1)


def test_subset_full_set():
    assert sorted(sample_uniform_subset(3, 3, RngState(0))) == [0, 1, 2]


def test_subset_singletons_uniform():
    rng = RngState(5)
    draws = np.array([sample_uniform_subset(4, 1, rng)[0] for _ in range(DRAWS)])
    freq = np.bincount(draws, minlength=4) / DRAWS
    assert np.all((0.24 <= freq) & (freq <= 0.26))


def test_subset_pairs_uniform():
    rng = RngState(6)
    pairs = list(itertools.combinations(range(5), 2))
    index = {pair: i for i, pair in enumerate(pairs)}
    counts = np.zeros(len(pairs))
    for _ in range(DRAWS):
        counts[index[tuple(sorted(sample_uniform_subset(5, 2, rng)))]] += 1
    freq = counts / DRAWS
    assert np.all((0.09 <= freq) & (freq <= 0.11))


def test_subset_bad_alpha():
    with pytest.raises(ParameterError):
        sample_uniform_subset(3, 0, RngState(0))
    with pytest.raises(ParameterError):
        sample_uniform_subset(3, 4, RngState(0))


@given(n=st.integers(1, 40), data=st.data(), seed=st.integers(0, 2**32))
def test_subset_distinct_and_sized(n, data, seed):
    alpha = data.draw(st.integers(1, n))
    tau = sample_uniform_subset(n, alpha, RngState(seed))
    assert tau.size == alpha
    assert np.unique(tau).size == alpha
    assert tau.min() >= 0 and tau.max() < n


def test_sample_alpha():
    rng = RngState(8)
    assert sample_alpha(AlphaPolicy("fixed", 3), 10, rng) == 3
    assert sample_alpha(AlphaPolicy("fixed", 20), 10, rng) == 10
    ones = sum(sample_alpha(AlphaPolicy(), 2, rng) == 1 for _ in range(DRAWS))
    assert 0.49 <= ones / DRAWS <= 0.51
    with pytest.raises(ParameterError):
        AlphaPolicy("fixed", 0)


def test_draw_alphas_range():
    a = draw_alphas(AlphaPolicy(), 6, RngState(9), 10_000)
    assert a.min() == 1 and a.max() == 6
    np.testing.assert_array_equal(draw_alphas(AlphaPolicy("fixed", 9), 6, RngState(9), 3), [6, 6, 6])


def test_chunk_size():
    assert chunk_size(100) == 8100
    assert chunk_size(10_000) == 10_000
    assert chunk_size(7) % 7 == 0
