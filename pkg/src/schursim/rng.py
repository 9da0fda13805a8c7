"""Seeded random streams and exact Bernoulli draws.

Streams come from numpy's ``SeedSequence(seed, spawn_key=(stream, worker))``
feeding a PCG64 generator, which is bit-reproducible across platforms.  The
sampler uses stream 0; the amplitude estimator uses stream 0 for draws from
the target distribution and stream 1 for draws from the permuted source.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import InvalidParameters

WORD_BITS = 64
_WORD = 1 << WORD_BITS
_BUFFER = 1024

__all__ = ["check_seed", "stream_generator", "shard_sizes", "WordSource", "ExactCoin"]


def check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed < _WORD:
        raise InvalidParameters(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def stream_generator(seed: int, stream: int, worker: int = 0) -> np.random.Generator:
    ss = np.random.SeedSequence(check_seed(seed), spawn_key=(stream, worker))
    return np.random.Generator(np.random.PCG64(ss))


def shard_sizes(count: int, workers: int) -> list[int]:
    """Split ``count`` draws into ``workers`` contiguous shards."""
    if workers < 1:
        raise InvalidParameters("workers must be >= 1")
    return [count * (w + 1) // workers - count * w // workers for w in range(workers)]


class WordSource:
    """Uniform 64-bit words from a generator, fetched in blocks."""

    def __init__(self, gen: np.random.Generator):
        self._gen = gen
        self._buf: list[int] = []
        self._pos = 0

    def next_word(self) -> int:
        if self._pos == len(self._buf):
            self._buf = self._gen.integers(0, _WORD, size=_BUFFER, dtype=np.uint64,
                                           endpoint=False).tolist()
            self._pos = 0
        w = self._buf[self._pos]
        self._pos += 1
        return w


class ExactCoin:
    """Bernoulli(p) for rational p, with zero bias.

    A uniform U in [0, 1) is read 64 bits at a time and compared with the
    binary expansion of p; the draw is ``U < p``.  Further words are consumed
    only while the prefixes agree, which happens with probability 2**-64.
    """

    __slots__ = ("p", "_words", "_rest")

    def __init__(self, p: Fraction):
        p = Fraction(p)
        if not 0 <= p <= 1:
            raise InvalidParameters(f"probability {p} outside [0, 1]")
        self.p = p
        self._words: list[int] = []
        self._rest = p

    def _word(self, i: int) -> int:
        while len(self._words) <= i:
            scaled = self._rest * _WORD
            w = scaled.numerator // scaled.denominator
            self._words.append(w)
            self._rest = scaled - w
        return self._words[i]

    def flip(self, source: WordSource) -> bool:
        i = 0
        while True:
            threshold = self._word(i)
            u = source.next_word()
            if u < threshold:
                return True
            if u > threshold:
                return False
            i += 1
