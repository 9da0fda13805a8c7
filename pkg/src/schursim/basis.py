"""Sequentially coupled (Young-Yamanouchi) basis labels.

A label on ``n`` qubits is a coupling path ``(j_01, j_012, ..., J)`` of
``n - 1`` spins plus a total magnetic number ``M``.  Qubits are indexed from
0; the path entry at position ``k`` is the spin of qubits ``0..k+1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterator

from .errors import DomainTooLarge, InvalidLabel
from .spin import TwiceInt, format_half, parse_half

DEFAULT_PATH_CAP = 10 ** 7

__all__ = [
    "CouplingPath",
    "SchurLabel",
    "validate",
    "require_valid",
    "path_count",
    "iter_paths",
    "enumerate_paths",
    "iter_labels",
    "canonical_index",
    "label_from_index",
]


@dataclass(frozen=True, order=True)
class CouplingPath:
    js: tuple[TwiceInt, ...]

    def __post_init__(self):
        object.__setattr__(self, "js", tuple(int(j) for j in self.js))

    @property
    def n(self) -> int:
        return len(self.js) + 1

    @property
    def J(self) -> TwiceInt:
        return self.js[-1]

    def spin_at(self, k: int) -> TwiceInt:
        """Twice the spin of qubits 0..k (k = 0 is the lone first qubit)."""
        return 1 if k == 0 else self.js[k - 1]

    @classmethod
    def parse(cls, spins) -> "CouplingPath":
        return cls(tuple(parse_half(s) for s in spins))

    def __str__(self):
        return "(" + ", ".join(format_half(j) for j in self.js) + ")"


@dataclass(frozen=True)
class SchurLabel:
    path: CouplingPath
    twice_M: TwiceInt

    @classmethod
    def of(cls, spins, M) -> "SchurLabel":
        """Build from textual spins, e.g. ``SchurLabel.of(["1", "1/2"], "-1/2")``."""
        return cls(CouplingPath.parse(spins), parse_half(M, signed=True))

    @property
    def n(self) -> int:
        return self.path.n

    @property
    def J(self) -> TwiceInt:
        return self.path.J

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "path": [format_half(j) for j in self.path.js],
            "M": format_half(self.twice_M),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SchurLabel":
        try:
            label = cls.of(obj["path"], obj["M"])
        except KeyError as exc:
            raise InvalidLabel(f"label JSON lacks field {exc}") from None
        if "n" in obj and int(obj["n"]) != label.n:
            raise InvalidLabel(
                f"label has n={obj['n']} but a path of length {len(label.path.js)}"
            )
        return label

    def __str__(self):
        return f"{self.path} M={format_half(self.twice_M)}"


def validate(label: SchurLabel) -> tuple[bool, list[str]]:
    """Check all path and label invariants; never raises."""
    problems = []
    js = label.path.js
    if not js:
        return False, ["path is empty (need n >= 2 qubits)"]
    if js[0] not in (0, 2):
        problems.append("j_01 must be 0 or 1")
    for k, j in enumerate(js):
        if j < 0:
            problems.append(f"entry at index {k} is negative")
        elif j > k + 2:
            problems.append(f"entry at index {k} exceeds {format_half(k + 2)}")
    for k in range(len(js) - 1):
        step = js[k + 1] - js[k]
        if abs(step) != 1:
            sign = "+" if step > 0 else ""
            problems.append(
                f"step at index {k}→{k + 1} is {sign}{format_half(step)}, not ±1/2"
            )
    J, M = js[-1], label.twice_M
    if abs(M) > J:
        problems.append(f"|M| = {format_half(abs(M))} exceeds J = {format_half(J)}")
    if (J - M) % 2:
        problems.append("M and J differ by a non-integer")
    return not problems, problems


def require_valid(label: SchurLabel) -> SchurLabel:
    ok, problems = validate(label)
    if not ok:
        raise InvalidLabel(f"invalid label {label}: " + "; ".join(problems))
    return label


def path_count(n: int, J: TwiceInt | None = None) -> int:
    """Number of coupling paths on n qubits, optionally with final spin J.

    Equals the number of standard Young tableaux of shape (n/2+J, n/2-J).
    """
    if J is None:
        return comb(n, n // 2)
    if J < 0 or J > n or (n - J) % 2:
        return 0
    k = (n - J) // 2
    return comb(n, k) - (comb(n, k - 1) if k > 0 else 0)


def _check_n(n: int) -> None:
    if n < 2:
        raise InvalidLabel(f"need at least 2 qubits, got n={n}")


def iter_paths(n: int, J: TwiceInt | None = None) -> Iterator[CouplingPath]:
    """Lazily yield coupling paths in lexicographic order of twice-values."""
    _check_n(n)
    length = n - 1
    buf: list[int] = []

    def walk(prev: int) -> Iterator[CouplingPath]:
        pos = len(buf)
        if pos == length:
            yield CouplingPath(tuple(buf))
            return
        remaining = length - pos - 1
        for j in (prev - 1, prev + 1):
            if j < 0:
                continue
            if J is not None and abs(j - J) > remaining:
                continue
            buf.append(j)
            yield from walk(j)
            buf.pop()

    yield from walk(1)


def enumerate_paths(n: int, J: TwiceInt | None = None, *,
                    cap: int = DEFAULT_PATH_CAP) -> list[CouplingPath]:
    _check_n(n)
    if J is not None and (J < 0 or J > n or (n - J) % 2):
        raise InvalidLabel(f"J = {format_half(J)} is impossible on {n} qubits")
    count = path_count(n, J)
    if count > cap:
        raise DomainTooLarge(f"{count} paths exceed the cap of {cap}")
    return list(iter_paths(n, J))


def iter_labels(n: int, J: TwiceInt | None = None) -> Iterator[SchurLabel]:
    """All labels in canonical order: path lexicographic, then M ascending."""
    for path in iter_paths(n, J):
        for M in range(-path.J, path.J + 1, 2):
            yield SchurLabel(path, M)


@lru_cache(maxsize=None)
def _completions(n: int, pos: int, prev: int) -> int:
    # labels (weighted by 2J+1) extending a path whose entry before `pos` is `prev`
    if pos == n - 1:
        return prev + 1
    total = _completions(n, pos + 1, prev + 1)
    if prev > 0:
        total += _completions(n, pos + 1, prev - 1)
    return total


def canonical_index(label: SchurLabel) -> int:
    """Rank of ``label`` among all labels on its qubit count (see iter_labels)."""
    require_valid(label)
    n = label.n
    rank, prev = 0, 1
    for pos, j in enumerate(label.path.js):
        if j > prev and prev > 0:
            rank += _completions(n, pos + 1, prev - 1)
        prev = j
    return rank + (label.twice_M + label.J) // 2


def label_from_index(n: int, index: int) -> SchurLabel:
    """Inverse of :func:`canonical_index`."""
    _check_n(n)
    if not 0 <= index < 2 ** n:
        raise InvalidLabel(f"index {index} outside [0, 2^{n})")
    js, prev = [], 1
    for pos in range(n - 1):
        if prev > 0:
            w = _completions(n, pos + 1, prev - 1)
            if index < w:
                prev -= 1
                js.append(prev)
                continue
            index -= w
        prev += 1
        js.append(prev)
    return SchurLabel(CouplingPath(tuple(js)), 2 * index - prev)
