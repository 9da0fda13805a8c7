"""Exact sampling of computational-basis outcomes of a coupled basis state.

The suffix marginal ``p(y_k ... y_{n-1})`` of ``p(y) = <y|label>**2`` is a
product of squared Clebsch-Gordan coefficients: fixing ``M`` and the suffix
bits fixes every partial sum ``M_l`` with ``l >= k - 1``.  Bits are therefore
drawn from ``y_{n-1}`` down to ``y_0``, each from an exact rational
conditional that depends only on the position and the running ``M_l``.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Sequence

from .basis import SchurLabel, require_valid
from .errors import InvalidParameters, LengthMismatch, ZeroConditioning
from .overlap import Bits, parse_bits
from .rng import ExactCoin, WordSource, shard_sizes, stream_generator
from .wigner import clebsch_gordan

__all__ = [
    "telescoping_marginal",
    "conditional_bias",
    "LabelSampler",
    "sample",
]


def _factor_sq(label: SchurLabel, l: int, M_cur: int, m: int) -> Fraction:
    """Squared coupling factor of qubit ``l`` given M_l and m_l (twice-values)."""
    M_prev = M_cur - m
    if l == 0:
        return Fraction(1) if M_prev == 0 else Fraction(0)
    j_prev = label.path.spin_at(l - 1)
    if abs(M_prev) > j_prev:
        return Fraction(0)
    j_cur = label.path.spin_at(l)
    return clebsch_gordan(1, m, j_prev, M_prev, j_cur, M_cur).square()


def telescoping_marginal(label: SchurLabel, suffix: str | Sequence[int]) -> Fraction:
    """Exact p(y_k ... y_{n-1}) for the given suffix (``""`` gives 1)."""
    require_valid(label)
    bits = parse_bits(suffix) if len(suffix) else ()
    n = label.n
    if len(bits) > n:
        raise LengthMismatch(f"suffix of length {len(bits)} on {n} qubits")
    k = n - len(bits)
    acc = Fraction(1)
    M_cur = label.twice_M
    for l in range(n - 1, k - 1, -1):
        m = 2 * bits[l - k] - 1
        f = _factor_sq(label, l, M_cur, m)
        if not f:
            return Fraction(0)
        acc *= f
        M_cur -= m
    return acc


def conditional_bias(label: SchurLabel, suffix: str | Sequence[int]) -> Fraction:
    """p(y_{k-1} = 1 | y_k ... y_{n-1}) as an exact rational."""
    n = label.n
    if len(suffix) >= n:
        raise LengthMismatch("suffix already fixes every bit")
    bits = parse_bits(suffix) if len(suffix) else ()
    base = telescoping_marginal(label, bits)
    if not base:
        raise ZeroConditioning(f"suffix {suffix!r} has zero probability")
    return telescoping_marginal(label, (1,) + bits) / base


class LabelSampler:
    """Draws bitstrings from ``p(y) = <y|label>**2``.

    Conditionals are cached by ``(position, M_l)``; there are at most
    ``n * (n + 1)`` of them.
    """

    def __init__(self, label: SchurLabel):
        self.label = require_valid(label)
        self._coins: dict[tuple[int, int], ExactCoin] = {}

    def coin(self, l: int, M_cur: int) -> ExactCoin:
        key = (l, M_cur)
        coin = self._coins.get(key)
        if coin is None:
            coin = ExactCoin(_factor_sq(self.label, l, M_cur, 1))
            self._coins[key] = coin
        return coin

    def draw(self, source: WordSource) -> Bits:
        n = self.label.n
        out = [0] * n
        M_cur = self.label.twice_M
        for l in range(n - 1, -1, -1):
            if self.coin(l, M_cur).flip(source):
                out[l] = 1
                M_cur -= 1
            else:
                M_cur += 1
        return tuple(out)

    def draw_many(self, source: WordSource, count: int) -> list[Bits]:
        return [self.draw(source) for _ in range(count)]


def _sample_shard(label: SchurLabel, seed: int, worker: int, count: int) -> list[Bits]:
    source = WordSource(stream_generator(seed, 0, worker))
    return LabelSampler(label).draw_many(source, count)


def sample(label: SchurLabel, seed: int, count: int, *, workers: int = 1) -> list[Bits]:
    """``count`` i.i.d. draws; worker ``w`` uses stream ``(0, w)`` of ``seed``.

    Output is ordered by (worker, draw index), so it depends on ``workers``
    but never on scheduling.
    """
    require_valid(label)
    if count < 1:
        raise InvalidParameters("count must be positive")
    sizes = shard_sizes(count, workers)
    if workers == 1:
        return _sample_shard(label, seed, 0, count)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_sample_shard, [label] * workers, [seed] * workers,
                         range(workers), sizes)
        return [bits for part in parts for bits in part]
