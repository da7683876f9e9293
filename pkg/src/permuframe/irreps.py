"""Evaluated irreducible representations of S_n and the Frobenius-Schur basis.

Matrix-entry convention: the coefficient function ``pi_{k,i}`` takes the
value ``<pi(g) e_k, e_i>``, i.e. row i, column k of ``pi(g)``. Indices k and
i are 1-based throughout this module, matching the usual labels.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import factorial, sqrt

import numpy as np

from .perm import GroupOrdering, Permutation, adjacent_factorization, check_group_size, lex_ordering
from .young import Partition, as_partition, dimension, evaluate_word, format_partition, partitions_of, yor_adjacent

_R3 = sqrt(3.0) / 2.0

# Hand-written S_3 tables, indexed by the adjacent transposition k <-> (k, k+1).
# The (2,1) matrices are unitarily equivalent to, but not equal to, YOR.
S3_FIXTURE_GENERATORS: dict[Partition, dict[int, np.ndarray]] = {
    (3,): {1: np.array([[1.0]]), 2: np.array([[1.0]])},
    (2, 1): {
        1: np.array([[-0.5, _R3], [_R3, 0.5]]),
        2: np.array([[1.0, 0.0], [0.0, -1.0]]),
    },
    (1, 1, 1): {1: np.array([[-1.0]]), 2: np.array([[-1.0]])},
}

SOURCES = ("yor", "fixture")


class RepresentationError(ValueError):
    pass


@dataclass(frozen=True)
class IrrepTable:
    shape: Partition
    dim: int
    ordering: GroupOrdering
    matrices: np.ndarray  # (n!, d, d), row g is pi(ordering[g])
    source: str = "yor"

    @property
    def n(self) -> int:
        return sum(self.shape)

    def matrix(self, p: Permutation) -> np.ndarray:
        return self.matrices[self.ordering.index(p)]

    def to_json(self) -> dict:
        return {
            "shape": format_partition(self.shape),
            "dim": self.dim,
            "ordering": self.ordering.ordering_id,
            "source": self.source,
            "matrices": {str(p): self.matrices[g].tolist()
                         for g, p in enumerate(self.ordering)},
        }

    @classmethod
    def from_json(cls, data: dict, ordering: GroupOrdering) -> IrrepTable:
        shape = as_partition([int(x) for x in data["shape"].split(",")])
        mats = np.array([data["matrices"][str(p)] for p in ordering], dtype=float)
        return cls(shape, int(data["dim"]), ordering, mats, data.get("source", "yor"))


def generator_matrices(shape: Partition, source: str = "yor") -> dict[int, np.ndarray]:
    shape = as_partition(shape)
    n = sum(shape)
    if source == "yor":
        return {k: yor_adjacent(shape, k) for k in range(1, n)}
    if source == "fixture":
        if n != 3:
            raise RepresentationError("the fixture source only covers S_3")
        return S3_FIXTURE_GENERATORS[shape]
    raise RepresentationError(f"unknown source {source!r}; expected one of {SOURCES}")


def build_irrep_table(shape: Partition, ordering: GroupOrdering | None = None,
                      source: str = "yor") -> IrrepTable:
    shape = as_partition(shape)
    n = sum(shape)
    check_group_size(n)
    if ordering is None:
        ordering = lex_ordering(n)
    if ordering.n != n:
        raise RepresentationError(f"ordering is for S_{ordering.n}, shape {shape} is for S_{n}")
    gens = generator_matrices(shape, source)
    d = dimension(shape)
    mats = np.empty((len(ordering), d, d))
    for g, p in enumerate(ordering):
        mats[g] = evaluate_word(gens, adjacent_factorization(p), d)
    mats.setflags(write=False)
    return IrrepTable(shape, d, ordering, mats, source)


def build_all_tables(n: int, ordering: GroupOrdering | None = None,
                     source: str = "yor") -> dict[Partition, IrrepTable]:
    if ordering is None:
        ordering = lex_ordering(n)
    return {shape: build_irrep_table(shape, ordering, source) for shape in partitions_of(n)}


@dataclass(frozen=True)
class CoefficientVector:
    shape: Partition
    row: int  # k
    col: int  # i
    values: np.ndarray


def coefficient_vector(table: IrrepTable, k: int, i: int) -> CoefficientVector:
    """Coefficient function pi_{k,i} as a vector over the table's ordering."""
    d = table.dim
    if not (1 <= k <= d and 1 <= i <= d):
        raise RepresentationError(f"indices ({k}, {i}) out of range 1..{d}")
    return CoefficientVector(table.shape, k, i, table.matrices[:, i - 1, k - 1].copy())


def row_functions(table: IrrepTable, i: int) -> np.ndarray:
    """Matrix whose column k-1 is pi_{k,i}; the rows are R_{pi,i}(z)."""
    if not 1 <= i <= table.dim:
        raise RepresentationError(f"row index {i} out of range 1..{table.dim}")
    return table.matrices[:, i - 1, :]


@dataclass(frozen=True)
class BasisVector:
    shape: Partition
    i: int
    j: int
    vector: np.ndarray


def fs_basis(n: int, ordering: GroupOrdering | None = None, source: str = "yor",
             tables: dict[Partition, IrrepTable] | None = None) -> list[BasisVector]:
    """Orthonormal basis sqrt(d/n!) * pi_{i,j} over all irreps, i, j."""
    if tables is None:
        tables = build_all_tables(n, ordering, source)
    order = factorial(n)
    basis = []
    for shape, table in tables.items():
        scale = sqrt(table.dim / order)
        for i in range(1, table.dim + 1):
            for j in range(1, table.dim + 1):
                basis.append(BasisVector(shape, i, j, scale * table.matrices[:, j - 1, i - 1]))
    return basis


def basis_matrix(basis: list[BasisVector]) -> np.ndarray:
    return np.array([b.vector for b in basis])


@dataclass(frozen=True)
class SchurReport:
    n: int
    size: int
    max_offdiag: float
    max_norm_error: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.size == factorial(self.n) and max(self.max_offdiag, self.max_norm_error) < self.tol


def verify_schur(n: int, tol: float = 1e-10, ordering: GroupOrdering | None = None,
                 source: str = "yor") -> SchurReport:
    basis = basis_matrix(fs_basis(n, ordering, source))
    gram = basis @ basis.T
    diag = np.diag(gram)
    off = gram - np.diag(diag)
    return SchurReport(n, len(basis), float(np.abs(off).max(initial=0.0)),
                       float(np.abs(diag - 1.0).max(initial=0.0)), tol)


def dump_tables(tables: dict[Partition, IrrepTable]) -> str:
    return json.dumps([t.to_json() for t in tables.values()], indent=1)
