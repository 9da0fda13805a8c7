import cmath
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import lab
from schursim.basis import iter_labels, label_from_index
from schursim.errors import InvalidLabel, LengthMismatch, PhaseNotUnit
from schursim.exact import SqrtRational, SqrtSum
from schursim.overlap import DiagonalPhase, int_to_bits, overlap, overlap_with_phase


def test_three_qubit_state():
    x = lab("1 1/2", "-1/2")
    assert overlap("001", x) == SqrtRational(1, Fraction(2, 3))
    assert overlap("010", x) == overlap("100", x) == SqrtRational(-1, Fraction(1, 6))
    assert all(not overlap(y, x) for y in ("000", "011", "101", "110", "111"))


def test_two_qubit_states():
    singlet = lab("0", "0")
    assert overlap("01", singlet) == SqrtRational(1, Fraction(1, 2))
    assert overlap("10", singlet) == -overlap("01", singlet)
    assert overlap("11", lab("1", "1")) == 1


def test_wrong_total_projection_is_zero():
    assert not overlap("111", lab("1 3/2", "1/2"))


def test_errors():
    with pytest.raises(LengthMismatch):
        overlap("01", lab("1 1/2", "1/2"))
    with pytest.raises(InvalidLabel):
        overlap("001", lab("1 5/2", "1/2"))


@given(st.integers(2, 40), st.data())
def test_stretched_states_are_product_states(n, data):
    up = data.draw(st.booleans())
    y = "1" * n if up else "0" * n
    path = " ".join(f"{k}/2" if k % 2 else str(k // 2) for k in range(2, n + 1))
    assert overlap(y, lab(path, ("" if up else "-") + (f"{n}/2" if n % 2 else str(n // 2)))) == 1


@given(st.integers(2, 9), st.data())
def test_normalization(n, data):
    label = label_from_index(n, data.draw(st.integers(0, 2 ** n - 1)))
    total = SqrtSum.total(overlap(int_to_bits(i, n), label).square() for i in range(2 ** n))
    assert total == 1


def test_phases():
    x = lab("1 1/2", "1/2")
    for y in ("011", "101", "110"):
        ph = overlap_with_phase(y, x, DiagonalPhase.popcount_i())
        assert ph.quarter_turns == 2 and ph.phase == -1
        assert ph.abs_squared() == overlap(y, x).square()
    angles = DiagonalPhase.per_bit([0.3, 0.1, 0.2])
    ph = overlap_with_phase("011", x, angles)
    assert abs(complex(ph) - float(overlap("011", x)) * cmath.exp(0.3j)) < 1e-15
    bad = DiagonalPhase.custom(lambda y: 2.0)
    with pytest.raises(PhaseNotUnit):
        overlap_with_phase("011", x, bad)


def test_phase_json():
    for phase in (DiagonalPhase.identity(), DiagonalPhase.parity([0, 2]),
                  DiagonalPhase.popcount_i(), DiagonalPhase.per_bit([0.5, 1.0])):
        assert DiagonalPhase.from_json(phase.to_json()) == phase
