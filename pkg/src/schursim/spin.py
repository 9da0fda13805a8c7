"""Half-integer quantum numbers stored as doubled integers.

Every spin ``j`` and magnetic number ``m`` in the package is an ``int`` holding
``2j`` (resp. ``2m``).  No floating representation of a quantum number exists.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InvalidSpin

TwiceInt = int

__all__ = [
    "TwiceInt",
    "is_valid_spin",
    "is_valid_pair",
    "is_triangle",
    "couple_range",
    "parse_half",
    "format_half",
]


def is_valid_spin(j: TwiceInt) -> bool:
    return isinstance(j, int) and j >= 0


def is_valid_pair(j: TwiceInt, m: TwiceInt) -> bool:
    """True if ``m`` is an admissible magnetic number for spin ``j``."""
    return j >= 0 and abs(m) <= j and (j - m) % 2 == 0


def is_triangle(a: TwiceInt, b: TwiceInt, c: TwiceInt) -> bool:
    """Angular-momentum addition rule for spins given as twice-values.

    ``|a - b| <= c <= a + b`` and ``a + b + c`` integral, i.e. the sum of
    twice-values is even.
    """
    return abs(a - b) <= c <= a + b and (a + b + c) % 2 == 0


def couple_range(j1: TwiceInt, j2: TwiceInt) -> list[TwiceInt]:
    """All total spins reachable by coupling ``j1`` and ``j2``, ascending."""
    if j1 < 0 or j2 < 0:
        raise InvalidSpin(f"negative spin twice-value in ({j1}, {j2})")
    return list(range(abs(j1 - j2), j1 + j2 + 1, 2))


def parse_half(text: str | int, *, signed: bool = False) -> TwiceInt:
    """Parse ``"3/2"``, ``"2"`` or ``"-1/2"`` into a twice-value.

    Only denominators 1 and 2 are accepted.  Negative values require
    ``signed=True`` (magnetic numbers).
    """
    if isinstance(text, bool):
        raise InvalidSpin(f"not a half-integer: {text!r}")
    if isinstance(text, int):
        value = Fraction(text)
    else:
        s = str(text).strip()
        if "/" in s:
            num, _, den = s.partition("/")
            try:
                n_int, d_int = int(num), int(den)
            except ValueError:
                raise InvalidSpin(f"not a half-integer: {text!r}") from None
            if d_int not in (1, 2):
                raise InvalidSpin(f"denominator must be 1 or 2: {text!r}")
            value = Fraction(n_int, d_int)
        else:
            try:
                value = Fraction(int(s))
            except ValueError:
                raise InvalidSpin(f"not a half-integer: {text!r}") from None
    twice = 2 * value
    if twice.denominator != 1:
        raise InvalidSpin(f"not a half-integer: {text!r}")
    if twice < 0 and not signed:
        raise InvalidSpin(f"spin must be nonnegative: {text!r}")
    return int(twice)


def format_half(twice: TwiceInt) -> str:
    if twice % 2 == 0:
        return str(twice // 2)
    return f"{twice}/2"
