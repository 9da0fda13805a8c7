import collections
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import lab
from schursim.basis import iter_labels, label_from_index
from schursim.errors import InvalidParameters, ZeroConditioning
from schursim.overlap import format_bits, int_to_bits, overlap
from schursim.rng import ExactCoin, WordSource, shard_sizes, stream_generator
from schursim.sampler import conditional_bias, sample, telescoping_marginal


def test_marginals_of_three_qubit_state():
    x = lab("1 1/2", "-1/2")
    assert telescoping_marginal(x, "1") == Fraction(2, 3)
    assert telescoping_marginal(x, "0") == Fraction(1, 3)
    assert telescoping_marginal(x, "") == 1
    assert conditional_bias(x, "1") == 0
    with pytest.raises(ZeroConditioning):
        conditional_bias(x, "11")


@pytest.mark.parametrize("n", [3, 4, 5])
def test_marginals_sum_overlaps(n):
    for label in iter_labels(n):
        for k in range(n + 1):
            for s in range(2 ** (n - k)):
                suffix = int_to_bits(s, n - k)
                full = sum((overlap(int_to_bits(p, k) + suffix, label).square()
                            for p in range(2 ** k)), Fraction(0))
                assert telescoping_marginal(label, suffix) == full


def test_sampling_is_reproducible():
    x = lab("1 1/2 1 3/2", "1/2")
    assert sample(x, 11, 500) == sample(x, 11, 500)
    assert sample(x, 11, 500) != sample(x, 12, 500)


def test_samples_have_right_weight():
    x = lab("1 3/2", "3/2")
    assert {format_bits(y) for y in sample(x, 7, 50)} == {"111"}


def test_sampling_frequencies():
    x = lab("1 1/2 1 1/2", "-1/2")
    draws = sample(x, 2024, 40_000)
    counts = collections.Counter(draws)
    tv = sum(abs(counts.get(int_to_bits(i, 5), 0) / len(draws)
                 - float(overlap(int_to_bits(i, 5), x).square())) for i in range(32)) / 2
    assert tv < 0.02


def test_parallel_sampling_matches_shards():
    x = lab("1 1/2 1", "0")
    two = sample(x, 5, 101, workers=2)
    assert len(two) == 101 and two == sample(x, 5, 101, workers=2)
    assert shard_sizes(101, 2) == [50, 51]


def test_invalid_count():
    with pytest.raises(InvalidParameters):
        sample(lab("1", "0"), 1, 0)


@given(st.fractions(min_value=0, max_value=1, max_denominator=10 ** 6))
def test_exact_coin_expansion(p):
    coin = ExactCoin(p)
    # the first few words are the binary expansion of p
    acc = Fraction(0)
    for i in range(3):
        acc += Fraction(coin._word(i), 2 ** (64 * (i + 1)))
    assert 0 <= p - acc < Fraction(1, 2 ** 192)


def test_exact_coin_extremes():
    src = WordSource(stream_generator(3, 0))
    assert not any(ExactCoin(0).flip(src) for _ in range(1000))
    assert all(ExactCoin(1).flip(src) for _ in range(1000))
