"""Brute-force ground truth for small qubit counts.

* ``dense_schur_matrix`` builds every coupled state as an explicit vector by
  coupling one qubit at a time, independently of the product formula in
  :mod:`schursim.overlap`.
* ``exact_transition`` sums ``<phi|y><y|U_pi Lambda|source>`` over all ``y``.
* ``yor_transposition_matrix`` is Young's orthogonal form for two-row shapes,
  built from axial distances with no reference to Clebsch-Gordan coefficients.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

from .basis import CouplingPath, SchurLabel, canonical_index, enumerate_paths, iter_labels
from .errors import DomainTooLarge, InvalidLabel, InvalidTransposition
from .estimator import Permutation, PqcCircuit
from .exact import ONE, ZERO, ExactComplex, SqrtRational, SqrtSum
from .overlap import _QUARTER, bits_to_int, int_to_bits, overlap
from .spin import TwiceInt, couple_range
from .wigner import clebsch_gordan

DENSE_CAP = 10
EXHAUSTIVE_CAP = 16
YOR_CAP = 8

# Overall sign between YOR and the coupled basis.  With each qubit coupled on
# the left of the existing block (see schursim.overlap) the two agree entry
# by entry, so no per-path gauge is needed.
YOR_SIGN = 1

__all__ = [
    "schur_columns",
    "dense_schur_matrix",
    "is_orthogonal",
    "exact_transition",
    "yor_transposition_matrix",
    "transition_block",
    "matrix_to_json",
    "YOR_SIGN",
]


def schur_columns(n: int, *, cap: int = DENSE_CAP) -> dict[SchurLabel, dict[int, SqrtRational]]:
    """Every coupled basis state as a sparse vector ``{row index: amplitude}``.

    Rows are computational strings with y_0 as the most significant bit.
    """
    if n > cap:
        raise DomainTooLarge(f"dense construction capped at n={cap}, got {n}")
    if n < 2:
        raise InvalidLabel("need at least 2 qubits")
    # partial states keyed by (path so far, M of the block); j of qubit 0 is 1/2
    states: dict[tuple[tuple[int, ...], int], dict[tuple[int, ...], SqrtRational]] = {
        ((), -1): {(0,): ONE},
        ((), 1): {(1,): ONE},
    }
    for _ in range(1, n):
        grown: dict = {}
        for (js, M_old), vec in states.items():
            j_old = js[-1] if js else 1
            for j_new in couple_range(j_old, 1):
                for bit in (0, 1):
                    m = 2 * bit - 1
                    M_new = M_old + m
                    if abs(M_new) > j_new:
                        continue
                    c = clebsch_gordan(1, m, j_old, M_old, j_new, M_new)
                    if not c:
                        continue
                    target = grown.setdefault((js + (j_new,), M_new), {})
                    for bits, amp in vec.items():
                        key = bits + (bit,)
                        if key in target:
                            raise AssertionError("coupling produced a repeated component")
                        target[key] = amp * c
        states = grown
    out = {}
    for (js, M), vec in states.items():
        label = SchurLabel(CouplingPath(js), M)
        out[label] = {bits_to_int(bits): amp for bits, amp in vec.items()}
    return out


def dense_schur_matrix(n: int, *, cap: int = DENSE_CAP) -> list[list[SqrtRational]]:
    """The 2^n x 2^n Schur transform; column ``canonical_index(L)`` is state L."""
    cols = schur_columns(n, cap=cap)
    dim = 2 ** n
    matrix = [[ZERO] * dim for _ in range(dim)]
    for label, vec in cols.items():
        c = canonical_index(label)
        for r, amp in vec.items():
            matrix[r][c] = amp
    return matrix


def is_orthogonal(matrix: list[list[SqrtRational]]) -> bool:
    """Exact check of M^T M = I."""
    dim = len(matrix)
    cols = [{r: matrix[r][c] for r in range(dim) if matrix[r][c]} for c in range(dim)]
    for a in range(dim):
        ca = cols[a]
        for b in range(a, dim):
            cb = cols[b]
            common = ca.keys() & cb.keys()
            dot = SqrtSum.total(ca[r] * cb[r] for r in common)
            if dot != (1 if a == b else 0):
                return False
    return True


def exact_transition(circuit: PqcCircuit, *, cap: int = EXHAUSTIVE_CAP):
    """sum over all y of <phi|y><y|U_pi Lambda|source>, without sampling.

    Returns an :class:`ExactComplex` (real when Lambda is absent) when all
    phases are exact fourth roots of unity, else a float complex.
    """
    circuit.check()
    n = circuit.n
    if n > cap:
        raise DomainTooLarge(f"exhaustive sum capped at n={cap}, got {n}")
    exact = ExactComplex()
    approx = []
    inverse = circuit.pi.inverse()
    for idx in range(2 ** n):
        y = int_to_bits(idx, n)
        bra = overlap(y, circuit.target)
        if not bra:
            continue
        z = inverse.apply(y)
        ket = overlap(z, circuit.source)
        if not ket:
            continue
        term = bra * ket
        if circuit.lam is None:
            exact.add_rotated(term, 0)
            continue
        k = circuit.lam.quarter_turns(z)
        if k is not None:
            exact.add_rotated(term, k)
        else:
            approx.append(circuit.lam(z) * float(term))
    if approx:
        return complex(exact) + complex(math.fsum(a.real for a in approx),
                                        math.fsum(a.imag for a in approx))
    return exact


def _tableau_cells(path: CouplingPath) -> list[tuple[int, int]]:
    """(row, column) of the box holding qubit k in the two-row tableau."""
    cells = [(0, 0)]
    lengths = [1, 0]
    prev = 1
    for j in path.js:
        row = 0 if j > prev else 1
        cells.append((row, lengths[row]))
        lengths[row] += 1
        prev = j
    return cells


def _path_from_rows(rows: list[int]) -> CouplingPath:
    js, j = [], 1
    for r in rows[1:]:
        j += 1 if r == 0 else -1
        js.append(j)
    return CouplingPath(tuple(js))


def yor_transposition_matrix(n: int, J: TwiceInt, k: int) -> list[list[SqrtRational]]:
    """Young's orthogonal form of the transposition of qubits k, k+1.

    Irrep of the two-row shape ((n/2)+J, (n/2)-J); rows and columns follow
    ``enumerate_paths(n, J)``.  A +1/2 step at qubit i puts box i in row 1,
    a -1/2 step in row 2.  With axial distance
    d = content(k+1) - content(k), the column of T has 1/d on the diagonal
    and sqrt(1 - 1/d^2) at the tableau with k and k+1 exchanged.
    """
    if n > YOR_CAP:
        raise DomainTooLarge(f"YOR matrices capped at n={YOR_CAP}")
    if not 0 <= k <= n - 2:
        raise InvalidTransposition(f"adjacent transposition ({k}, {k + 1}) invalid for n={n}")
    paths = enumerate_paths(n, J)
    index = {p: i for i, p in enumerate(paths)}
    dim = len(paths)
    matrix = [[ZERO] * dim for _ in range(dim)]
    for col, path in enumerate(paths):
        cells = _tableau_cells(path)
        (r1, c1), (r2, c2) = cells[k], cells[k + 1]
        d = (c2 - r2) - (c1 - r1)
        matrix[col][col] = SqrtRational(Fraction(1, d))
        if abs(d) == 1:
            continue
        rows = [r for r, _ in cells]
        rows[k], rows[k + 1] = rows[k + 1], rows[k]
        partner = index[_path_from_rows(rows)]
        matrix[partner][col] = SqrtRational(YOR_SIGN, Fraction(d * d - 1, d * d))
    return matrix


def transition_block(n: int, J: TwiceInt, pi: Permutation, twice_M: TwiceInt | None = None,
                     lam=None) -> list[list]:
    """exact_transition between all paths ending at J, same ordering as YOR."""
    M = J if twice_M is None else twice_M
    paths = enumerate_paths(n, J)
    labels = [SchurLabel(p, M) for p in paths]
    return [[exact_transition(PqcCircuit(src, tgt, pi, lam)) for src in labels]
            for tgt in labels]


def matrix_to_json(matrix) -> str:
    """Sparse dump: ``{"shape": [r, c], "entries": [[row, col, s, q], ...]}``."""
    entries = []
    for r, row in enumerate(matrix):
        for c, v in enumerate(row):
            if isinstance(v, (SqrtSum, ExactComplex)):
                if v:
                    entries.append([r, c, str(v)])
            elif v:
                entries.append([r, c, str(v.s), str(v.q)])
    shape = [len(matrix), len(matrix[0]) if matrix else 0]
    return json.dumps({"shape": shape, "entries": entries})
