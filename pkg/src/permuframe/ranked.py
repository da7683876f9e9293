"""Ranked ballots as signals on S_n, and grouped coefficient reports.

A ranking ``a1,...,an`` means candidate ak holds rank k; the ranking is
stored as the permutation with that one-line word.
"""

from __future__ import annotations

import csv
import io
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .frames import Frame, FrameError, analysis
from .perm import GroupOrdering, Permutation, PermutationError
from .young import Partition, format_partition

log = logging.getLogger(__name__)


class RankingError(ValueError):
    pass


@dataclass
class RankedDataset:
    n: int
    counts: dict[Permutation, float] = field(default_factory=dict)
    labels: list[str] | None = None

    def add(self, ranking: Permutation, count: float) -> None:
        if ranking.n != self.n:
            raise RankingError(f"ranking {ranking} does not rank {self.n} candidates")
        if count < 0:
            raise RankingError(f"negative count {count} for ranking {ranking}")
        self.counts[ranking] = self.counts.get(ranking, 0.0) + float(count)

    def to_signal(self, ordering: GroupOrdering) -> np.ndarray:
        if ordering.n != self.n:
            raise RankingError(f"ordering is for S_{ordering.n}, data ranks {self.n} candidates")
        f = np.zeros(len(ordering))
        for p, c in self.counts.items():
            f[ordering.index(p)] += c
        return f

    @classmethod
    def from_signal(cls, f, ordering: GroupOrdering) -> RankedDataset:
        ds = cls(ordering.n)
        for p, value in zip(ordering, np.asarray(f, dtype=float)):
            if value != 0:
                ds.add(p, value)
        return ds

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["ranking", "count"])
        for p in sorted(self.counts):
            writer.writerow([str(p), format(self.counts[p], ".17g")])
        return buf.getvalue()


def read_rankings(path: str | Path, n: int) -> RankedDataset:
    """Read a ``ranking,count`` CSV. Duplicate rankings are summed with a warning."""
    ds = RankedDataset(n)
    text = Path(path).read_text()
    reader = csv.reader(io.StringIO(text))
    seen = set()
    for lineno, row in enumerate(reader, 1):
        if not row or all(not cell.strip() for cell in row):
            continue
        if lineno == 1 and row[0].strip().lower() == "ranking":
            continue
        # an unquoted ranking spills over several cells: the last one is the count
        if len(row) == 2:
            ranking_text, count_text = row
        elif len(row) == n + 1:
            ranking_text, count_text = ",".join(row[:-1]), row[-1]
        else:
            raise RankingError(f"line {lineno}: malformed row {row!r}")
        try:
            p = Permutation.parse(ranking_text)
            count = float(count_text)
        except (PermutationError, ValueError) as exc:
            raise RankingError(f"line {lineno}: {exc}") from None
        if p.n != n:
            raise RankingError(f"line {lineno}: {ranking_text!r} is not a ranking of {n} candidates")
        if p in seen:
            log.warning("line %d: duplicate ranking %s, counts summed", lineno, p)
        seen.add(p)
        try:
            ds.add(p, count)
        except RankingError as exc:
            raise RankingError(f"line {lineno}: {exc}") from None
    return ds


def ingest_rankings(path: str | Path, n: int, ordering: GroupOrdering) -> np.ndarray:
    return read_rankings(path, n).to_signal(ordering)


@dataclass(frozen=True)
class CoefficientRow:
    partition: Partition
    eigenvalue: float
    i: int
    atom: int
    coefficient: float


@dataclass(frozen=True)
class CoefficientReport:
    rows: list[CoefficientRow]
    energies: dict[tuple[Partition, float], float]
    signal_energy: float

    @property
    def total_energy(self) -> float:
        return sum(self.energies.values())

    def nonzero_groups(self, tol: float = 1e-12) -> list[tuple[Partition, float]]:
        return [k for k, e in self.energies.items() if e > tol]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["partition", "lambda", "i", "atom", "coefficient"])
        for r in self.rows:
            w.writerow([format_partition(r.partition), _fmt(r.eigenvalue), r.i, r.atom, _fmt(r.coefficient)])
        w.writerow([])
        w.writerow(["partition", "lambda", "energy"])
        for (shape, lam), e in self.energies.items():
            w.writerow([format_partition(shape), _fmt(lam), _fmt(e)])
        w.writerow(["total", "", _fmt(self.total_energy)])
        w.writerow(["signal_norm_squared", "", _fmt(self.signal_energy)])
        return buf.getvalue()


def _fmt(x: float) -> str:
    return format(x, ".17g")


def coefficient_report(frame: Frame, signal) -> CoefficientReport:
    """Analysis coefficients grouped by (partition, eigenvalue) with group energies."""
    signal = np.asarray(signal, dtype=float)
    try:
        coeffs = analysis(frame, signal)
    except FrameError as exc:
        raise RankingError(str(exc)) from None
    rows = []
    energies: dict[tuple[Partition, float], float] = defaultdict(float)
    for idx, (atom, c) in enumerate(zip(frame.atoms, coeffs)):
        rows.append(CoefficientRow(atom.shape, atom.eigenvalue, atom.i, idx, float(c)))
        energies[(atom.shape, atom.eigenvalue)] += float(c) ** 2
    return CoefficientReport(rows, dict(energies), float(signal @ signal))
