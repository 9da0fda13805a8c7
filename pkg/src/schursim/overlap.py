"""Overlaps <y|label> between computational and sequentially coupled states.

Bit ``y_k`` is qubit ``k`` with ``|0> = |1/2, -1/2>`` and ``|1> = |1/2, +1/2>``,
so ``2*m_k = 2*y_k - 1``.  The label's ``M`` is the plain sum of the ``m_k``.
The overlap is a product of at most ``n - 1`` Clebsch-Gordan coefficients
along the partial sums ``M_l = m_0 + ... + m_l``.

Each qubit is coupled onto the left of the block built so far, i.e. the factor
for qubit ``l`` is ``<1/2 m_l; j_(0..l-1) M_(l-1) | j_(0..l) M_l>``.  Relative
to coupling on the right this changes each basis state by the sign
``(-1)**(number of downward steps in its path)`` and reproduces e.g.
``|J=1/2, j_01=1> = sqrt(2/3)|001> - (|010> + |100>)/sqrt(6)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .basis import SchurLabel, require_valid
from .errors import InvalidCircuit, LengthMismatch, PhaseNotUnit
from .exact import ONE, ZERO, SqrtRational
from .wigner import clebsch_gordan

PHASE_TOLERANCE = 1e-12

Bits = tuple[int, ...]

_QUARTER = (1 + 0j, 1j, -1 + 0j, -1j)

__all__ = [
    "Bits",
    "parse_bits",
    "format_bits",
    "bits_to_int",
    "int_to_bits",
    "partial_sums",
    "overlap",
    "DiagonalPhase",
    "PhasedOverlap",
    "overlap_with_phase",
]


def parse_bits(y: str | Sequence[int]) -> Bits:
    if isinstance(y, str):
        if not y or set(y) - {"0", "1"}:
            raise LengthMismatch(f"not a bitstring: {y!r}")
        return tuple(int(c) for c in y)
    bits = tuple(int(b) for b in y)
    if any(b not in (0, 1) for b in bits):
        raise LengthMismatch(f"not a bitstring: {y!r}")
    return bits


def format_bits(bits: Sequence[int]) -> str:
    return "".join(str(b) for b in bits)


def bits_to_int(bits: Sequence[int]) -> int:
    """Row index of a computational state; y_0 is the most significant bit."""
    out = 0
    for b in bits:
        out = (out << 1) | b
    return out


def int_to_bits(index: int, n: int) -> Bits:
    return tuple((index >> (n - 1 - k)) & 1 for k in range(n))


def partial_sums(bits: Sequence[int]) -> list[int]:
    """Twice-values of M_l = m_0 + ... + m_l."""
    out, acc = [], 0
    for b in bits:
        acc += 2 * b - 1
        out.append(acc)
    return out


def _overlap(bits: Bits, label: SchurLabel) -> SqrtRational:
    path = label.path
    total = 2 * sum(bits) - len(bits)
    if total != label.twice_M:
        return ZERO
    value = ONE
    M_prev = 2 * bits[0] - 1
    j_prev = 1
    for l in range(1, len(bits)):
        m = 2 * bits[l] - 1
        M_cur = M_prev + m
        j_cur = path.js[l - 1]
        if abs(M_cur) > j_cur:
            return ZERO
        c = clebsch_gordan(1, m, j_prev, M_prev, j_cur, M_cur)
        if not c:
            return ZERO
        value = value * c
        M_prev, j_prev = M_cur, j_cur
    return value


def overlap(y: str | Sequence[int], label: SchurLabel) -> SqrtRational:
    """Exact <y|label>; zero immediately when sum(m_k) differs from M."""
    bits = parse_bits(y)
    if len(bits) != label.n:
        raise LengthMismatch(f"bitstring has {len(bits)} qubits, label has {label.n}")
    require_valid(label)
    return _overlap(bits, label)


@dataclass(frozen=True)
class DiagonalPhase:
    """A Z-diagonal unitary ``Lambda`` given by its phase on each bitstring.

    Built-in kinds serialize and pickle; ``custom`` wraps an arbitrary
    callable and only works in-process.
    """

    kind: str = "identity"
    qubits: tuple[int, ...] | None = None
    angles: tuple[float, ...] | None = None
    fn: Callable[[Bits], complex] | None = field(default=None, compare=False)

    @classmethod
    def identity(cls) -> "DiagonalPhase":
        return cls("identity")

    @classmethod
    def parity(cls, qubits: Sequence[int] | None = None) -> "DiagonalPhase":
        """(-1) ** (sum of the selected bits); all qubits by default."""
        return cls("parity", qubits=None if qubits is None else tuple(qubits))

    @classmethod
    def per_bit(cls, angles: Sequence[float]) -> "DiagonalPhase":
        """exp(i * sum_k angles[k] * y_k)."""
        return cls("per_bit", angles=tuple(float(a) for a in angles))

    @classmethod
    def popcount_i(cls) -> "DiagonalPhase":
        """i ** popcount(y)."""
        return cls("popcount_i")

    @classmethod
    def custom(cls, fn: Callable[[Bits], complex], descriptor: str = "custom") -> "DiagonalPhase":
        return cls(f"custom:{descriptor}", fn=fn)

    def quarter_turns(self, bits: Bits) -> int | None:
        """k with Lambda(y) = i**k when the phase is an exact 4th root of unity."""
        if self.kind == "identity":
            return 0
        if self.kind == "parity":
            sel = bits if self.qubits is None else [bits[k] for k in self.qubits]
            return 2 * (sum(sel) & 1)
        if self.kind == "popcount_i":
            return sum(bits) & 3
        return None

    def __call__(self, bits: Bits) -> complex:
        k = self.quarter_turns(bits)
        if k is not None:
            return _QUARTER[k]
        if self.kind == "per_bit":
            if len(self.angles) != len(bits):
                raise LengthMismatch("per-bit phase has the wrong number of angles")
            return cmath.exp(1j * math.fsum(a for a, b in zip(self.angles, bits) if b))
        if self.fn is not None:
            z = complex(self.fn(bits))
            if abs(abs(z) - 1.0) > PHASE_TOLERANCE:
                raise PhaseNotUnit(f"|Lambda({format_bits(bits)})| = {abs(z)!r}")
            return z
        raise InvalidCircuit(f"unknown phase kind {self.kind!r}")

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.qubits is not None:
            out["qubits"] = list(self.qubits)
        if self.angles is not None:
            out["angles"] = list(self.angles)
        return out

    @classmethod
    def from_json(cls, obj: dict | None) -> "DiagonalPhase | None":
        if obj is None:
            return None
        kind = obj.get("kind")
        if kind == "identity":
            return cls.identity()
        if kind == "parity":
            return cls.parity(obj.get("qubits"))
        if kind == "per_bit":
            return cls.per_bit(obj["angles"])
        if kind == "popcount_i":
            return cls.popcount_i()
        raise InvalidCircuit(f"unknown phase kind {kind!r}")


@dataclass(frozen=True)
class PhasedOverlap:
    """Lambda(y) * <y|label>: an exact real amplitude times a unit phase."""

    amplitude: SqrtRational
    phase: complex
    quarter_turns: int | None = None

    def __complex__(self):
        return self.phase * float(self.amplitude)

    def abs_squared(self):
        """Exact ``amplitude**2`` for exact phases, else the float value."""
        if self.quarter_turns is not None:
            return self.amplitude.square()
        return abs(complex(self)) ** 2


def overlap_with_phase(y: str | Sequence[int], label: SchurLabel,
                       phase: DiagonalPhase | None) -> PhasedOverlap:
    bits = parse_bits(y)
    amp = overlap(bits, label)
    if phase is None:
        return PhasedOverlap(amp, 1 + 0j, 0)
    z = phase(bits)
    if abs(abs(z) - 1.0) > PHASE_TOLERANCE:
        raise PhaseNotUnit(f"|Lambda({format_bits(bits)})| = {abs(z)!r}")
    return PhasedOverlap(amp, z, phase.quarter_turns(bits))
