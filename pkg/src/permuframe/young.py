"""Partitions, standard Young tableaux and Young's orthogonal form."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial, sqrt
from typing import Sequence

import numpy as np

from .perm import Permutation, adjacent_factorization

Partition = tuple[int, ...]


class PartitionError(ValueError):
    pass


def as_partition(parts: Sequence[int]) -> Partition:
    parts = tuple(int(p) for p in parts)
    if not parts or any(p < 1 for p in parts):
        raise PartitionError(f"{parts} has non-positive parts")
    if any(a < b for a, b in zip(parts, parts[1:])):
        raise PartitionError(f"{parts} is not non-increasing")
    return parts


def parse_partition(text: str) -> Partition:
    text = text.strip().strip("()")
    try:
        return as_partition([int(tok) for tok in text.split(",") if tok.strip()])
    except ValueError as exc:
        raise PartitionError(f"cannot parse partition {text!r}: {exc}") from None


def format_partition(shape: Partition) -> str:
    return ",".join(map(str, shape))


def partitions_of(n: int) -> list[Partition]:
    """All partitions of n in descending lexicographic order."""
    if n < 1:
        raise PartitionError(f"n must be positive, got {n}")

    def gen(remaining, largest):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    return list(gen(n, n))


@dataclass(frozen=True)
class StandardTableau:
    shape: Partition
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if tuple(len(r) for r in self.rows) != self.shape:
            raise PartitionError(f"rows {self.rows} do not fill shape {self.shape}")
        n = sum(self.shape)
        if sorted(self.word()) != list(range(1, n + 1)):
            raise PartitionError(f"{self.rows} is not labelled by 1..{n}")
        for r, row in enumerate(self.rows):
            for c, a in enumerate(row):
                if c + 1 < len(row) and row[c + 1] <= a:
                    raise PartitionError(f"row {r} of {self.rows} does not increase")
                if r + 1 < len(self.rows) and c < len(self.rows[r + 1]) and self.rows[r + 1][c] <= a:
                    raise PartitionError(f"column {c} of {self.rows} does not increase")

    @property
    def n(self) -> int:
        return sum(self.shape)

    def word(self) -> tuple[int, ...]:
        return tuple(a for row in self.rows for a in row)

    def position(self, label: int) -> tuple[int, int]:
        for r, row in enumerate(self.rows):
            if label in row:
                return r, row.index(label)
        raise KeyError(label)

    def content(self, label: int) -> int:
        r, c = self.position(label)
        return c - r

    def swap(self, a: int, b: int) -> tuple[tuple[int, ...], ...]:
        """Rows with labels a and b exchanged (not necessarily standard)."""
        table = {a: b, b: a}
        return tuple(tuple(table.get(x, x) for x in row) for row in self.rows)


@lru_cache(maxsize=None)
def standard_tableaux(shape: Partition) -> tuple[StandardTableau, ...]:
    """Every standard filling of ``shape``, sorted by row-reading word."""
    shape = as_partition(shape)
    n = sum(shape)
    found = []

    # place n in each removable corner and recurse on the smaller shape
    def fill(current: list[int], rows: list[list[int]], k: int):
        if k == 0:
            found.append(tuple(tuple(r) for r in rows))
            return
        for r, length in enumerate(current):
            if length == 0:
                continue
            below = current[r + 1] if r + 1 < len(current) else 0
            if below < length:
                current[r] -= 1
                rows[r][current[r]] = k
                fill(current, rows, k - 1)
                current[r] += 1

    fill(list(shape), [[0] * p for p in shape], n)
    tableaux = [StandardTableau(shape, rows) for rows in found]
    tableaux.sort(key=StandardTableau.word)
    return tuple(tableaux)


def hook_length_dimension(shape: Partition) -> int:
    shape = as_partition(shape)
    n = sum(shape)
    conj = [sum(1 for p in shape if p > c) for c in range(shape[0])]
    hooks = 1
    for r, length in enumerate(shape):
        for c in range(length):
            hooks *= (length - c - 1) + (conj[c] - r - 1) + 1
    return factorial(n) // hooks


def dimension(shape: Partition) -> int:
    """Dimension of the irreducible representation indexed by ``shape``."""
    d = hook_length_dimension(shape)
    count = len(standard_tableaux(as_partition(shape)))
    if d != count:
        raise AssertionError(f"hook-length {d} != tableau count {count} for {shape}")
    return d


@lru_cache(maxsize=None)
def _yor_adjacent(shape: Partition, k: int) -> np.ndarray:
    tableaux = standard_tableaux(shape)
    index = {t.rows: a for a, t in enumerate(tableaux)}
    d = len(tableaux)
    m = np.zeros((d, d))
    for a, t in enumerate(tableaux):
        (r1, c1), (r2, c2) = t.position(k), t.position(k + 1)
        if r1 == r2:
            m[a, a] = 1.0
        elif c1 == c2:
            m[a, a] = -1.0
        else:
            axial = (c2 - r2) - (c1 - r1)
            m[a, a] = 1.0 / axial
            b = index[t.swap(k, k + 1)]
            m[a, b] = sqrt(1.0 - 1.0 / axial**2)
    m.setflags(write=False)
    return m


def yor_adjacent(shape: Partition, k: int) -> np.ndarray:
    """Young's orthogonal form of (k, k+1) in the standard-tableau basis."""
    shape = as_partition(shape)
    n = sum(shape)
    if not 1 <= k < n:
        raise PartitionError(f"k={k} out of range 1..{n - 1}")
    return _yor_adjacent(shape, k).copy()


def evaluate_word(generators: Sequence[np.ndarray] | dict, word: Sequence[int], d: int) -> np.ndarray:
    """Multiply generator matrices along a word of adjacent transpositions."""
    m = np.eye(d)
    for k in word:
        m = m @ generators[k]
    return m


def yor_evaluate(shape: Partition, p: Permutation) -> np.ndarray:
    shape = as_partition(shape)
    n = sum(shape)
    if p.n != n:
        raise PartitionError(f"{p} is not in S_{n}")
    gens = {k: _yor_adjacent(shape, k) for k in range(1, n)}
    return evaluate_word(gens, adjacent_factorization(p), dimension(shape))
