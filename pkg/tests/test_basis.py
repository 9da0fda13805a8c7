import math

import pytest
from hypothesis import given, strategies as st

from conftest import lab
from schursim.basis import (CouplingPath, SchurLabel, canonical_index, enumerate_paths,
                            iter_labels, label_from_index, path_count, validate)
from schursim.errors import DomainTooLarge, InvalidLabel


def test_paths_are_dyck_like():
    assert [str(p) for p in enumerate_paths(3)] == ["(0, 1/2)", "(1, 1/2)", "(1, 3/2)"]
    assert len(enumerate_paths(4, 0)) == 2


@pytest.mark.parametrize("n", range(2, 12))
def test_label_count_is_dimension(n):
    assert sum(1 for _ in iter_labels(n)) == 2 ** n
    for J in range(n % 2, n + 1, 2):
        # ballot numbers: dimension of the S_n irrep for the two-row shape
        a, b = (n + J) // 2, (n - J) // 2
        hooks = math.comb(n, b) - (math.comb(n, b - 1) if b else 0)
        assert path_count(n, J) == hooks == len(enumerate_paths(n, J))
        assert a >= b


@pytest.mark.parametrize("n", range(2, 11))
def test_canonical_index_is_a_bijection(n):
    labels = list(iter_labels(n))
    ranks = [canonical_index(x) for x in labels]
    assert sorted(ranks) == list(range(2 ** n))
    assert all(label_from_index(n, canonical_index(x)) == x for x in labels)


def test_index_examples():
    assert canonical_index(lab("0", "0")) == 0
    assert canonical_index(lab("1", "-1")) == 1
    assert canonical_index(lab("1", "1")) == 3
    assert canonical_index(lab("1 1/2", "-1/2")) == 2


@given(st.integers(2, 60), st.data())
def test_index_round_trip_large(n, data):
    idx = data.draw(st.integers(0, 2 ** n - 1))
    label = label_from_index(n, idx)
    assert validate(label)[0]
    assert canonical_index(label) == idx


@pytest.mark.parametrize("path,M,needle", [
    ("1/2 1", "1/2", "j_01 must be 0 or 1"),
    ("1 2", "0", "step at index 0→1 is +1"),
    ("1 1/2", "3/2", "exceeds J"),
])
def test_validation_messages(path, M, needle):
    ok, problems = validate(lab(path, M))
    assert not ok and any(needle in p for p in problems)


def test_json_round_trip():
    x = lab("1 3/2 1", "-1")
    assert SchurLabel.from_json(x.to_json()) == x
    with pytest.raises(InvalidLabel):
        SchurLabel.from_json({"n": 5, "path": ["1"], "M": "0"})


def test_enumeration_cap():
    with pytest.raises(DomainTooLarge):
        enumerate_paths(40)
    assert CouplingPath((2, 1)).spin_at(0) == 1
