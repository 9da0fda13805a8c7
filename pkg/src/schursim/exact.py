"""Exact real numbers of the form s*sqrt(q) and finite sums of them.

``SqrtRational`` keeps ``q`` canonical: a square-free positive integer (1 for
zero), so two values are equal iff their fields are equal.
``SqrtSum`` is a sparse linear combination over distinct canonical radicals.
Square roots of distinct square-free rationals are linearly independent over
the rationals, so ``SqrtSum`` equality is also decidable field by field.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import gcd
from typing import Iterable, Union

import mpmath

Rational = Union[int, Fraction]

__all__ = [
    "SqrtRational",
    "SqrtSum",
    "ExactComplex",
    "ZERO",
    "ONE",
    "squarefree_split",
    "round_to_float",
]


def squarefree_split(n: int, bound: int | None = None) -> tuple[int, int]:
    """Write ``n = r*r * k`` with ``k`` square-free; return ``(r, k)``.

    Trial division.  When ``bound`` is given, only factors up to ``bound`` are
    tried and the cofactor must then be 1 (callers pass it when all prime
    factors are known to be small, e.g. products of factorials).
    """
    if n <= 0:
        raise ValueError("squarefree_split needs a positive integer")
    r, k = 1, 1
    p = 2
    while n > 1:
        if bound is None:
            if p * p > n:
                k *= n
                break
        elif p > bound:
            raise ValueError(f"cofactor {n} has a prime factor above {bound}")
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            r *= p ** (e // 2)
            if e % 2:
                k *= p
        p += 1 if p == 2 else 2
    return r, k


def _mul_radicands(q1: Fraction, q2: Fraction) -> tuple[int, Fraction]:
    """Multiply two square-free radicands; return (extracted factor, radicand)."""
    a1, a2 = q1.numerator, q2.numerator
    g = gcd(a1, a2)
    return g, Fraction((a1 // g) * (a2 // g))


class SqrtRational:
    """The exact value ``s * sqrt(q)``.

    Build from arbitrary ``s`` and ``q >= 0``; the constructor extracts square
    factors of ``q`` into ``s``.  Zero is always ``(0, 1)``.
    """

    __slots__ = ("s", "q")

    def __init__(self, s: Rational = 0, q: Rational = 1):
        s = Fraction(s)
        q = Fraction(q)
        if q < 0:
            raise ValueError("radicand must be nonnegative")
        if s == 0 or q == 0:
            self.s, self.q = Fraction(0), Fraction(1)
            return
        ra, ka = squarefree_split(q.numerator)
        rb, kb = squarefree_split(q.denominator)
        # sqrt(ka/kb) = sqrt(ka*kb)/kb and ka*kb stays square-free
        self.s = s * Fraction(ra, rb * kb)
        self.q = Fraction(ka * kb)

    @classmethod
    def _from_canonical(cls, s: Fraction, q: Fraction) -> "SqrtRational":
        obj = object.__new__(cls)
        if s == 0:
            obj.s, obj.q = Fraction(0), Fraction(1)
        else:
            obj.s, obj.q = s, q
        return obj

    @classmethod
    def sqrt_of(cls, r: Rational) -> "SqrtRational":
        """``sqrt(r)`` for a nonnegative rational ``r``."""
        return cls(1, r)

    # -- arithmetic ---------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, SqrtRational):
            if not self.s or not other.s:
                return ZERO
            f, q = _mul_radicands(self.q, other.q)
            return SqrtRational._from_canonical(self.s * other.s * f, q)
        if isinstance(other, (int, Fraction)):
            return SqrtRational._from_canonical(self.s * other, self.q)
        if isinstance(other, SqrtSum):
            return other * self
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, SqrtRational):
            if not other.s:
                raise ZeroDivisionError("division by exact zero")
            inv = SqrtRational._from_canonical(
                1 / (other.s * other.q), other.q
            )
            return self * inv
        if isinstance(other, (int, Fraction)):
            return SqrtRational._from_canonical(self.s / Fraction(other), self.q)
        return NotImplemented

    def __neg__(self):
        return SqrtRational._from_canonical(-self.s, self.q)

    def __pos__(self):
        return self

    def __add__(self, other):
        return SqrtSum.of(self) + other

    __radd__ = __add__

    def __sub__(self, other):
        return SqrtSum.of(self) - other

    def __rsub__(self, other):
        return SqrtSum.of(other) - SqrtSum.of(self)

    def square(self) -> Fraction:
        """The exact rational ``(s*sqrt(q))**2``."""
        return self.s * self.s * self.q

    def abs(self) -> "SqrtRational":
        return SqrtRational._from_canonical(abs(self.s), self.q)

    @property
    def sign(self) -> int:
        return (self.s > 0) - (self.s < 0)

    # -- comparisons ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, SqrtRational):
            return self.s == other.s and self.q == other.q
        if isinstance(other, (int, Fraction)):
            return self.q == 1 and self.s == other
        if isinstance(other, SqrtSum):
            return other == self
        return NotImplemented

    def __hash__(self):
        return hash((self.s, self.q))

    def __bool__(self):
        return self.s != 0

    def __float__(self):
        return round_to_float(self, 53)

    def __complex__(self):
        return complex(float(self))

    def __repr__(self):
        return f"SqrtRational({str(self.s)!r}, {str(self.q)!r})"

    def __str__(self):
        if self.q == 1:
            return str(self.s)
        return f"{self.s}*sqrt({self.q})"

    def to_json(self) -> dict:
        """Canonical fields plus the exact square and sign, e.g. for
        sqrt(2/3): ``s = "1/3", q = "6", square = "2/3", sign = 1``."""
        return {"s": str(self.s), "q": str(self.q), "square": str(self.square()),
                "sign": self.sign, "float": float(self)}

    @classmethod
    def from_json(cls, obj: dict) -> "SqrtRational":
        return cls(Fraction(obj["s"]), Fraction(obj["q"]))


ZERO = SqrtRational._from_canonical(Fraction(0), Fraction(1))
ONE = SqrtRational._from_canonical(Fraction(1), Fraction(1))


class SqrtSum:
    """Finite exact sum ``sum_q coeff[q] * sqrt(q)`` over canonical radicands."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Fraction, Fraction] | None = None):
        self.terms = {q: s for q, s in (terms or {}).items() if s}

    @classmethod
    def of(cls, value) -> "SqrtSum":
        if isinstance(value, SqrtSum):
            return value
        if isinstance(value, SqrtRational):
            return cls({value.q: value.s})
        if isinstance(value, (int, Fraction)):
            return cls({Fraction(1): Fraction(value)})
        raise TypeError(f"cannot convert {type(value).__name__} to SqrtSum")

    @classmethod
    def total(cls, values: Iterable) -> "SqrtSum":
        acc: dict[Fraction, Fraction] = {}
        for v in values:
            if isinstance(v, SqrtRational):
                if v.s:
                    acc[v.q] = acc.get(v.q, 0) + v.s
            else:
                for q, s in cls.of(v).terms.items():
                    acc[q] = acc.get(q, 0) + s
        return cls(acc)

    def __add__(self, other):
        try:
            other = SqrtSum.of(other)
        except TypeError:
            return NotImplemented
        acc = dict(self.terms)
        for q, s in other.terms.items():
            acc[q] = acc.get(q, 0) + s
        return SqrtSum(acc)

    __radd__ = __add__

    def __neg__(self):
        return SqrtSum({q: -s for q, s in self.terms.items()})

    def __sub__(self, other):
        try:
            return self + (-SqrtSum.of(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return SqrtSum.of(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SqrtSum({q: s * other for q, s in self.terms.items()})
        if isinstance(other, SqrtRational):
            other = SqrtSum.of(other)
        if not isinstance(other, SqrtSum):
            return NotImplemented
        acc: dict[Fraction, Fraction] = {}
        for q1, s1 in self.terms.items():
            for q2, s2 in other.terms.items():
                f, q = _mul_radicands(q1, q2)
                acc[q] = acc.get(q, 0) + s1 * s2 * f
        return SqrtSum(acc)

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            other = SqrtSum.of(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_single(self) -> bool:
        return len(self.terms) <= 1

    def as_sqrt_rational(self) -> SqrtRational:
        """Collapse to a single radical; raises ValueError if that is impossible."""
        if not self.terms:
            return ZERO
        if len(self.terms) > 1:
            raise ValueError(f"{self} is not a single radical")
        (q, s), = self.terms.items()
        return SqrtRational._from_canonical(s, q)

    def __float__(self):
        return math.fsum(round_to_float(SqrtRational._from_canonical(s, q), 53)
                         for q, s in self.terms.items())

    def __repr__(self):
        return f"SqrtSum({ {str(q): str(s) for q, s in self.terms.items()} })"

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(str(SqrtRational._from_canonical(s, q))
                          for q, s in sorted(self.terms.items()))

    def to_json(self) -> dict:
        return {
            "terms": [{"s": str(s), "q": str(q)} for q, s in sorted(self.terms.items())],
            "float": float(self),
        }


class ExactComplex:
    """``re + i*im`` with exact :class:`SqrtSum` parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = SqrtSum.of(re)
        self.im = SqrtSum.of(im)

    def add_rotated(self, value, quarter_turns: int) -> None:
        """In place: ``self += i**quarter_turns * value``."""
        k = quarter_turns & 3
        if k == 0:
            self.re = self.re + value
        elif k == 1:
            self.im = self.im + value
        elif k == 2:
            self.re = self.re - value
        else:
            self.im = self.im - value

    @property
    def is_real(self) -> bool:
        return not self.im

    def __eq__(self, other):
        if isinstance(other, ExactComplex):
            return self.re == other.re and self.im == other.im
        try:
            return not self.im and self.re == SqrtSum.of(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"ExactComplex({self.re!r}, {self.im!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        return f"({self.re}) + i*({self.im})"

    def to_json(self) -> dict:
        return {"re": self.re.to_json(), "im": self.im.to_json()}


def _round_sqrt_rational(r: Fraction, bits: int) -> tuple[int, int]:
    """Round ``sqrt(r)`` (r > 0) to nearest with a ``bits``-bit mantissa.

    Returns ``(mantissa, exponent)`` with ``2**(bits-1) <= mantissa <= 2**bits``
    and ``sqrt(r) ~= mantissa * 2**exponent``.  Exact integer arithmetic only.
    """
    num, den = r.numerator, r.denominator
    log2 = num.bit_length() - den.bit_length()
    e = (log2 // 2) - bits + 1
    while True:
        # y = r / 4**e
        if e >= 0:
            yn, yd = num, den << (2 * e)
        else:
            yn, yd = num << (-2 * e), den
        k = math.isqrt(yn // yd)
        # round to nearest: sqrt(y) >= k + 1/2  <=>  4*y >= (2k+1)**2
        if 4 * yn >= (2 * k + 1) ** 2 * yd:
            k += 1
        if k < (1 << (bits - 1)):
            e -= 1
        elif k > (1 << bits):
            e += 1
        else:
            return k, e


def round_to_float(v, bits: int = 53):
    """Round an exact value to ``bits`` significant bits.

    For ``bits <= 53`` the result is a Python ``float``; above that an
    ``mpmath.mpf`` holding the exact rounded dyadic.  The sign is exact and the
    relative error is at most ``2**-bits``.
    """
    if bits < 1:
        raise ValueError("bits must be positive")
    if isinstance(v, SqrtSum):
        if v.is_single():
            v = v.as_sqrt_rational()
        else:
            # cancellation between radicals is not certified here
            with mpmath.workprec(bits + 64):
                acc = mpmath.fsum(round_to_float(t, bits + 64) for t in
                                  (SqrtRational._from_canonical(s, q)
                                   for q, s in v.terms.items()))
            if bits <= 53:
                return float(acc)
            with mpmath.workprec(bits):
                return +acc
    if isinstance(v, (int, Fraction)):
        v = SqrtRational(v)
    if not v.s:
        return 0.0 if bits <= 53 else mpmath.mpf(0)
    mant, exp = _round_sqrt_rational(v.square(), bits)
    mant *= v.sign
    if bits <= 53:
        return math.ldexp(mant, exp)
    with mpmath.workprec(bits + 1):
        return mpmath.mpf((mant, exp))
