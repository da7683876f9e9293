"""Permutations of {1..n} in one-line notation, and orderings of S_n.

Composition is ``(p * q)(k) = p(q(k))``: q acts first.
"""

from __future__ import annotations

import itertools
import os
import re
from dataclasses import dataclass, field
from math import factorial
from typing import Iterable, Sequence

DEFAULT_MAX_N = 8
MAX_N_ENV = "PERMUFRAME_MAX_N"


class PermutationError(ValueError):
    pass


class GroupSizeError(ValueError):
    """Raised when n! would exceed the configured cap."""


def max_n(default: int = DEFAULT_MAX_N) -> int:
    value = os.environ.get(MAX_N_ENV)
    if value is None:
        return default
    try:
        return int(value)
    except ValueError:
        raise GroupSizeError(f"{MAX_N_ENV}={value!r} is not an integer") from None


def check_group_size(n: int, cap: int | None = None) -> None:
    cap = max_n() if cap is None else cap
    if n < 1:
        raise GroupSizeError(f"n must be positive, got {n}")
    if n > cap:
        raise GroupSizeError(
            f"n={n} exceeds the cap of {cap} (set {MAX_N_ENV} to raise it)")


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of {1..n}; ``images[k-1]`` is the image of k."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(a) for a in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise PermutationError(f"{list(self.images)} is not a permutation of 1..{len(images)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def parse(cls, text: str) -> Permutation:
        """Parse comma-separated one-line notation, e.g. ``"2,1,3"``."""
        try:
            return cls(tuple(int(tok) for tok in text.strip().split(",")))
        except ValueError as exc:
            raise PermutationError(f"cannot parse permutation {text!r}: {exc}") from None

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> Permutation:
        images = list(range(1, n + 1))
        seen: set[int] = set()
        for cycle in cycles:
            for a in cycle:
                if not 1 <= a <= n:
                    raise PermutationError(f"cycle entry {a} is not in 1..{n}")
                if a in seen:
                    raise PermutationError(f"entry {a} appears in more than one cycle")
                seen.add(a)
            for a, b in zip(cycle, tuple(cycle[1:]) + tuple(cycle[:1])):
                images[a - 1] = b
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, k: int) -> int:
        return self.images[k - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def inverse(self) -> Permutation:
        return inverse(self)

    def is_identity(self) -> bool:
        return all(a == k for k, a in enumerate(self.images, 1))

    def inversions(self) -> int:
        w = self.images
        return sum(1 for a, b in itertools.combinations(range(len(w)), 2) if w[a] > w[b])

    def sign(self) -> int:
        return -1 if self.inversions() % 2 else 1

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting from its smallest entry."""
        seen: set[int] = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            k = self(start)
            while k != start:
                cycle.append(k)
                seen.add(k)
                k = self(k)
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def cycle_str(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "id"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __str__(self) -> str:
        return ",".join(map(str, self.images))

    def __repr__(self) -> str:
        return f"Permutation({self})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return p∘q, i.e. k -> p(q(k))."""
    if p.n != q.n:
        raise PermutationError(f"size mismatch: S_{p.n} vs S_{q.n}")
    return Permutation(tuple(p.images[b - 1] for b in q.images))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.n
    for k, a in enumerate(p.images, 1):
        inv[a - 1] = k
    return Permutation(tuple(inv))


def adjacent_transposition(k: int, n: int) -> Permutation:
    """The transposition (k, k+1) in S_n."""
    if not 1 <= k < n:
        raise PermutationError(f"adjacent transposition index {k} out of range for S_{n}")
    return Permutation.from_cycles([(k, k + 1)], n)


def adjacent_factorization(p: Permutation) -> list[int]:
    """Reduced word [k1, ..., km] with p = s_k1 ∘ ... ∘ s_km, s_k = (k, k+1).

    Found by bubble-sorting the one-line word. Swapping positions k, k+1
    replaces p by p∘s_k, so the swaps read backwards give the word. Its
    length is the inversion number of p.
    """
    w = list(p.images)
    swaps = []
    for end in range(len(w) - 1, 0, -1):
        for k in range(end):
            if w[k] > w[k + 1]:
                w[k], w[k + 1] = w[k + 1], w[k]
                swaps.append(k + 1)
    swaps.reverse()
    return swaps


@dataclass(frozen=True)
class GroupOrdering:
    """A fixed listing of S_n; vectors on S_n are indexed by it."""

    ordering_id: str
    elements: tuple[Permutation, ...]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        index = {p: k for k, p in enumerate(self.elements)}
        if len(index) != len(self.elements):
            raise PermutationError("ordering lists a permutation twice")
        if self.elements:
            n = self.elements[0].n
            if any(p.n != n for p in self.elements) or len(self.elements) != factorial(n):
                raise PermutationError(f"ordering must list each element of S_{n} exactly once")
        object.__setattr__(self, "_index", index)

    @property
    def n(self) -> int:
        return self.elements[0].n

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, k: int) -> Permutation:
        return self.elements[k]

    def index(self, p: Permutation) -> int:
        try:
            return self._index[p]
        except KeyError:
            raise PermutationError(f"{p} is not in S_{self.n}") from None

    def labels(self) -> list[str]:
        return [str(p) for p in self.elements]

    def permutation_to(self, other: GroupOrdering) -> list[int]:
        """Indices ``idx`` with ``vec_other = vec_self[idx]``."""
        return [self.index(p) for p in other.elements]


def lex_ordering(n: int) -> GroupOrdering:
    check_group_size(n)
    perms = tuple(Permutation(w) for w in itertools.permutations(range(1, n + 1)))
    return GroupOrdering("lex", perms)


_S3_LISTING = ["1,2,3", "2,1,3", "1,3,2", "3,2,1", "2,3,1", "3,1,2"]


def paper_s3_ordering() -> GroupOrdering:
    """S_3 listed as id, (12), (23), (13), (123), (132)."""
    return GroupOrdering("paper_s3", tuple(Permutation.parse(s) for s in _S3_LISTING))


def custom_ordering(perms: Iterable[Permutation]) -> GroupOrdering:
    return GroupOrdering("custom", tuple(perms))


def make_ordering(ordering_id: str, n: int) -> GroupOrdering:
    if ordering_id == "lex":
        return lex_ordering(n)
    if ordering_id == "paper_s3":
        if n != 3:
            raise PermutationError("the paper_s3 ordering only exists for n=3")
        return paper_s3_ordering()
    raise PermutationError(f"unknown ordering {ordering_id!r}")


def enumerate_group(n: int, ordering: GroupOrdering | str = "lex") -> list[Permutation]:
    check_group_size(n)
    if isinstance(ordering, str):
        ordering = make_ordering(ordering, n)
    if ordering.n != n:
        raise PermutationError(f"ordering is for S_{ordering.n}, not S_{n}")
    return list(ordering.elements)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse a product of disjoint cycles such as ``"(1 2)(3 4)"``."""
    text = text.strip()
    if text in ("id", "()", ""):
        return Permutation.identity(n)
    cycles = []
    pos = 0
    for m in _CYCLE_RE.finditer(text):
        if text[pos:m.start()].strip():
            raise PermutationError(f"cannot parse cycle literal {text!r}")
        pos = m.end()
        body = m.group(1).replace(",", " ").split()
        try:
            cycles.append(tuple(int(tok) for tok in body))
        except ValueError:
            raise PermutationError(f"cannot parse cycle literal {text!r}") from None
    if text[pos:].strip() or not cycles:
        raise PermutationError(f"cannot parse cycle literal {text!r}")
    return Permutation.from_cycles(cycles, n)
