"""Exact triangle coefficients, Wigner 3j symbols and Clebsch-Gordan coefficients.

All arguments are twice-values (see :mod:`schursim.spin`).  Results are exact
:class:`~schursim.exact.SqrtRational` values in the Condon-Shortley phase
convention.  The square-root prefactor of the Racah formula is a ratio of
factorials, so its radicand is canonicalized from prime-exponent vectors
(Legendre's formula) rather than by factoring big integers.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache

from .errors import InvalidQuantumNumbers, RacahTermCountError, TriangleViolation
from .exact import ZERO, SqrtRational, round_to_float
from .spin import TwiceInt, is_triangle, is_valid_pair

__all__ = [
    "SqrtRational",
    "factorial",
    "triangle_coeff",
    "racah_nu",
    "racah_sum",
    "wigner3j",
    "clebsch_gordan",
    "round_to_float",
]


class _FactorialTable:
    """Append-only memo of n!.  Growth happens under a lock; reads of
    already-filled slots need none since list items are never rewritten."""

    def __init__(self):
        self._values = [1]
        self._lock = threading.Lock()

    def __call__(self, n: int) -> int:
        values = self._values
        if n < len(values):
            return values[n]
        if n < 0:
            raise ValueError(f"factorial of negative number {n}")
        with self._lock:
            values = self._values
            acc = values[-1]
            for k in range(len(values), n + 1):
                acc *= k
                values.append(acc)
            return values[n]


factorial = _FactorialTable()


class _PrimeTable:
    def __init__(self):
        self._primes: list[int] = []
        self._limit = 1
        self._lock = threading.Lock()

    def up_to(self, n: int) -> list[int]:
        if n > self._limit:
            with self._lock:
                if n > self._limit:
                    limit = max(n, 2 * self._limit)
                    sieve = bytearray([1]) * (limit + 1)
                    sieve[0:2] = b"\x00\x00"
                    for p in range(2, int(limit ** 0.5) + 1):
                        if sieve[p]:
                            sieve[p * p::p] = bytearray(len(sieve[p * p::p]))
                    self._primes = [p for p in range(limit + 1) if sieve[p]]
                    self._limit = limit
        primes = self._primes
        lo, hi = 0, len(primes)
        while lo < hi:
            mid = (lo + hi) // 2
            if primes[mid] <= n:
                lo = mid + 1
            else:
                hi = mid
        return primes[:lo]


_primes = _PrimeTable()


@lru_cache(maxsize=4096)
def _factorial_exponents(n: int) -> tuple[int, ...]:
    """Exponent of each prime <= n in n! (Legendre's formula)."""
    out = []
    for p in _primes.up_to(n):
        e, pk = 0, p
        while pk <= n:
            e += n // pk
            pk *= p
        out.append(e)
    return tuple(out)


def _sqrt_of_factorial_ratio(num_args, den_args) -> SqrtRational:
    """sqrt(prod(num_args)! / prod(den_args)!) as a canonical SqrtRational."""
    top = max(max(num_args, default=0), max(den_args, default=0))
    primes = _primes.up_to(top)
    exps = [0] * len(primes)
    for a in num_args:
        for i, e in enumerate(_factorial_exponents(a)):
            exps[i] += e
    for a in den_args:
        for i, e in enumerate(_factorial_exponents(a)):
            exps[i] -= e
    s_num = s_den = q = 1
    for p, e in zip(primes, exps):
        if e > 0:
            s_num *= p ** (e >> 1)
        elif e < 0:
            # p**(e/2) = p**-((1-e)//2) * sqrt(p) for odd e
            s_den *= p ** ((1 - e) >> 1)
        if e & 1:
            q *= p
    return SqrtRational._from_canonical(Fraction(s_num, s_den), Fraction(q))


def _require_spin(*js: TwiceInt) -> None:
    for j in js:
        if not isinstance(j, int) or j < 0:
            raise InvalidQuantumNumbers(f"invalid spin twice-value {j!r}")


def triangle_coeff(a: TwiceInt, b: TwiceInt, c: TwiceInt) -> Fraction:
    """Delta(abc) = (a+b-c)! (a-b+c)! (-a+b+c)! / (a+b+c+1)!"""
    _require_spin(a, b, c)
    if not is_triangle(a, b, c):
        raise TriangleViolation(f"({a}/2, {b}/2, {c}/2) violates the triangle rule")
    return Fraction(
        factorial((a + b - c) // 2) * factorial((a - b + c) // 2) * factorial((-a + b + c) // 2),
        factorial((a + b + c) // 2 + 1),
    )


def racah_nu(a, b, c, d, e, f) -> int:
    """The number of Racah terms minus one (twice-value arguments)."""
    return min(a + d, a - d, b + e, b - e, c + f, c - f,
               a + b - c, b + c - a, c + a - b) // 2


def racah_sum(a, b, c, d, e, f) -> tuple[Fraction, int]:
    """Alternating sum over t of the Racah formula and the number of terms.

    Arguments are twice-values; conservation and triangle conditions must
    already hold.  The summand denominators are
    t! (c-b+t+d)! (c-a+t-e)! (a+b-c-t)! (a-d-t)! (b+e-t)!
    """
    tmin = max(0, (b - c - d) // 2, (a - c + e) // 2)
    tmax = min((a + b - c) // 2, (a - d) // 2, (b + e) // 2)
    k1 = (c - b + d) // 2
    k2 = (c - a - e) // 2
    k3 = (a + b - c) // 2
    k4 = (a - d) // 2
    k5 = (b + e) // 2
    total = Fraction(0)
    for t in range(tmin, tmax + 1):
        den = (factorial(t) * factorial(k1 + t) * factorial(k2 + t)
               * factorial(k3 - t) * factorial(k4 - t) * factorial(k5 - t))
        total += Fraction(-1 if t & 1 else 1, den)
    return total, max(0, tmax - tmin + 1)


def wigner3j(j1: TwiceInt, j2: TwiceInt, J: TwiceInt,
             m1: TwiceInt, m2: TwiceInt, M: TwiceInt) -> SqrtRational:
    """Exact Wigner 3j symbol (j1 j2 J; m1 m2 M) by the Racah formula."""
    for j, m in ((j1, m1), (j2, m2), (J, M)):
        _require_spin(j)
        if not is_valid_pair(j, m):
            raise InvalidQuantumNumbers(f"(j, m) = ({j}/2, {m}/2) is not admissible")
    if m1 + m2 + M != 0 or not is_triangle(j1, j2, J):
        return ZERO
    a, b, c, d, e, f = j1, j2, J, m1, m2, M
    total, terms = racah_sum(a, b, c, d, e, f)
    nu = racah_nu(a, b, c, d, e, f)
    if terms != nu + 1:
        raise RacahTermCountError(f"Racah sum had {terms} terms, expected {nu + 1}")
    if not total:
        return ZERO
    root = _sqrt_of_factorial_ratio(
        [(a + b - c) // 2, (a - b + c) // 2, (-a + b + c) // 2,
         (a + d) // 2, (b + e) // 2, (c + f) // 2,
         (a - d) // 2, (b - e) // 2, (c - f) // 2],
        [(a + b + c) // 2 + 1],
    )
    if ((a - b - f) // 2) & 1:
        total = -total
    return root * total


@lru_cache(maxsize=1 << 16)
def clebsch_gordan(j1: TwiceInt, m1: TwiceInt, j2: TwiceInt, m2: TwiceInt,
                   J: TwiceInt, M: TwiceInt) -> SqrtRational:
    """<j1 m1; j2 m2 | J M> = (-1)^(M+j1-j2) sqrt(2J+1) (j1 j2 J; m1 m2 -M)."""
    for j, m in ((j1, m1), (j2, m2), (J, M)):
        _require_spin(j)
        if not is_valid_pair(j, m):
            raise InvalidQuantumNumbers(f"(j, m) = ({j}/2, {m}/2) is not admissible")
    if M != m1 + m2 or not is_triangle(j1, j2, J):
        return ZERO
    three_j = wigner3j(j1, j2, J, m1, m2, -M)
    if not three_j:
        return ZERO
    value = three_j * SqrtRational(1, J + 1)
    if ((M + j1 - j2) // 2) & 1:
        value = -value
    return value
