import pytest

from schursim.basis import enumerate_paths, iter_labels
from schursim.errors import DomainTooLarge, InvalidTransposition
from schursim.estimator import Permutation
from schursim.oracle import (dense_schur_matrix, is_orthogonal, schur_columns,
                             transition_block, yor_transposition_matrix)
from schursim.overlap import int_to_bits, overlap


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_dense_matrix_matches_overlaps(n):
    cols = schur_columns(n)
    for label in iter_labels(n):
        vec = cols[label]
        for i in range(2 ** n):
            assert overlap(int_to_bits(i, n), label) == vec.get(i, 0)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_dense_matrix_orthogonal(n):
    assert is_orthogonal(dense_schur_matrix(n))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_yor_equals_transition_block(n):
    for J in range(n % 2, n + 1, 2):
        for k in range(n - 1):
            yor = yor_transposition_matrix(n, J, k)
            block = transition_block(n, J, Permutation.swap(n, k, k + 1))
            assert all(b == y for rb, ry in zip(block, yor) for b, y in zip(rb, ry))


def test_yor_is_an_involution():
    yor = yor_transposition_matrix(6, 0, 2)
    dim = len(yor)
    for i in range(dim):
        for j in range(dim):
            s = sum((yor[i][k] * yor[k][j] for k in range(dim) if yor[i][k] and yor[k][j]), 0)
            assert s == (1 if i == j else 0)
    assert dim == len(enumerate_paths(6, 0))


def test_caps_and_errors():
    with pytest.raises(DomainTooLarge):
        dense_schur_matrix(11)
    with pytest.raises(InvalidTransposition):
        yor_transposition_matrix(4, 0, 3)
