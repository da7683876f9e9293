"""Generating sets, Cayley graphs of S_n and the spectra of pi(S)."""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from math import sqrt

import numpy as np

from .irreps import IrrepTable
from .perm import GroupOrdering, Permutation, PermutationError, compose, inverse, parse_cycles

log = logging.getLogger(__name__)

PRESETS = ("adjacent", "all_transpositions")
EIGEN_TOL = 1e-12
GROUP_TOL = 1e-8
MAX_SWEEPS = 100


class GenSetError(ValueError):
    pass


class EigenError(ValueError):
    pass


@dataclass(frozen=True)
class GeneratingSet:
    n: int
    elements: tuple[Permutation, ...]
    preset: str = "custom"

    def __post_init__(self):
        elems = tuple(sorted(set(self.elements)))
        for p in elems:
            if p.n != self.n:
                raise GenSetError(f"{p} is not in S_{self.n}")
            if p.is_identity():
                raise GenSetError("generating set contains the identity")
        missing = [p for p in elems if inverse(p) not in elems]
        if missing:
            raise GenSetError(
                "generating set is not inverse-closed: missing inverse of "
                + ", ".join(p.cycle_str() for p in missing))
        object.__setattr__(self, "elements", elems)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Permutation) -> bool:
        return p in self.elements

    def describe(self) -> str:
        if self.preset != "custom":
            return self.preset
        return "custom:" + ",".join(p.cycle_str() for p in self.elements)


def adjacent_set(n: int) -> GeneratingSet:
    return GeneratingSet(n, tuple(Permutation.from_cycles([(k, k + 1)], n) for k in range(1, n)),
                         "adjacent")


def all_transpositions_set(n: int) -> GeneratingSet:
    return GeneratingSet(n, tuple(Permutation.from_cycles([(a, b)], n)
                                  for a in range(1, n + 1) for b in range(a + 1, n + 1)),
                         "all_transpositions")


_ELEMENT_RE = re.compile(r"(?:\([^()]*\))+")


def parse_genset(n: int, spec: str, close_inverses: bool = False) -> GeneratingSet:
    """Parse ``adjacent``, ``all_transpositions`` or a list of cycle literals.

    Cycle lists may be written ``custom:(1 2),(1 3 2)`` or ``[(1 2 3)]``;
    adjacent cycles without a comma, e.g. ``(1 2)(3 4)``, form one element.
    """
    spec = spec.strip()
    if spec == "adjacent":
        return adjacent_set(n)
    if spec == "all_transpositions":
        return all_transpositions_set(n)
    body = spec[len("custom:"):] if spec.startswith("custom:") else spec
    body = body.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    literals = [tok.strip() for tok in re.split(r",(?![^()]*\))", body) if tok.strip()]
    if not literals:
        raise GenSetError(f"empty or unknown generating set {spec!r}")
    elements = []
    for lit in literals:
        if not _ELEMENT_RE.fullmatch(lit):
            raise GenSetError(f"cannot parse generating-set element {lit!r}")
        try:
            elements.append(parse_cycles(lit, n))
        except PermutationError as exc:
            raise GenSetError(str(exc)) from None
    if close_inverses:
        elements += [inverse(p) for p in elements]
    return GeneratingSet(n, tuple(elements), "custom")


def pi_of_S(table: IrrepTable, S: GeneratingSet) -> np.ndarray:
    """Sum of pi(a) over the generating set."""
    if table.n != S.n:
        raise GenSetError(f"table is for S_{table.n}, generating set for S_{S.n}")
    total = np.zeros((table.dim, table.dim))
    for a in S.elements:
        total += table.matrix(a)
    return total


def symmetric_eigen(A, tol: float = EIGEN_TOL, max_sweeps: int = MAX_SWEEPS):
    """Cyclic Jacobi eigendecomposition of a real symmetric matrix.

    Returns ``(vals, vecs)`` with eigenvalues ascending and the matching
    orthonormal eigenvectors as the columns of ``vecs``. Rotations stop once
    every off-diagonal entry is below ``tol`` times max(1, ||A||_F).
    """
    a = np.array(A, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise EigenError(f"expected a square matrix, got shape {a.shape}")
    d = a.shape[0]
    scale = max(1.0, float(np.linalg.norm(a)))
    if d and np.abs(a - a.T).max() > tol * scale:
        raise EigenError("matrix is not symmetric")
    a = (a + a.T) / 2.0
    v = np.eye(d)
    thresh = tol * scale

    for _ in range(max_sweeps):
        off = np.abs(a - np.diag(np.diag(a)))
        if d < 2 or off.max() < thresh:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]
                if abs(apq) < thresh * 1e-3:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + sqrt(theta * theta + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap, aq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        raise EigenError(f"Jacobi did not converge in {max_sweeps} sweeps")

    vals = np.diag(a).copy()
    order = np.argsort(vals, kind="stable")
    return vals[order], v[:, order]


@dataclass(frozen=True)
class Eigenspace:
    eigenvalue: float
    basis: np.ndarray  # (multiplicity, d); rows are orthonormal

    @property
    def multiplicity(self) -> int:
        return self.basis.shape[0]

    def project(self, x: np.ndarray) -> np.ndarray:
        return self.basis.T @ (self.basis @ x)


def _gram_schmidt(vectors: np.ndarray) -> np.ndarray:
    out = []
    for v in vectors:
        w = v.astype(float).copy()
        for u in out:
            w -= (u @ w) * u
        norm = np.linalg.norm(w)
        if norm < 1e-12:
            raise EigenError("eigenvectors are linearly dependent")
        out.append(w / norm)
    return np.array(out)


def group_eigenspaces(vals, vecs, group_tol: float = GROUP_TOL) -> list[Eigenspace]:
    """Merge eigenvalues closer than ``group_tol`` into single eigenspaces.

    Consecutive sorted eigenvalues within ``group_tol`` of each other join
    the same group; the reported eigenvalue is the group mean.
    """
    vals = np.asarray(vals, dtype=float)
    vecs = np.asarray(vecs, dtype=float)
    order = np.argsort(vals, kind="stable")
    groups: list[list[int]] = []
    for idx in order:
        if groups and vals[idx] - vals[groups[-1][-1]] <= group_tol:
            groups[-1].append(int(idx))
        else:
            groups.append([int(idx)])
    spaces = []
    for g in groups:
        spread = vals[g].max() - vals[g].min()
        if spread > 0:
            log.debug("merged eigenvalues %s (spread %.3g)", vals[g], spread)
        spaces.append(Eigenspace(float(vals[g].mean()), _gram_schmidt(vecs[:, g].T)))
    return spaces


def eigenspaces(table: IrrepTable, S: GeneratingSet, tol: float = EIGEN_TOL,
                group_tol: float = GROUP_TOL) -> list[Eigenspace]:
    vals, vecs = symmetric_eigen(pi_of_S(table, S), tol)
    return group_eigenspaces(vals, vecs, group_tol)


def cayley_edges(n: int, S: GeneratingSet, ordering: GroupOrdering) -> list[tuple[int, int]]:
    """Undirected edges {x, y} with x^-1 y in S, as sorted index pairs."""
    if S.n != n or ordering.n != n:
        raise GenSetError("generating set, ordering and n disagree")
    edges = set()
    for x_idx, x in enumerate(ordering):
        for a in S.elements:
            y_idx = ordering.index(compose(x, a))
            edges.add((min(x_idx, y_idx), max(x_idx, y_idx)))
    return sorted(edges)


def edges_csv(edges: list[tuple[int, int]], ordering: GroupOrdering) -> str:
    lines = ["perm_a,perm_b"]
    lines += [f'"{ordering[a]}","{ordering[b]}"' for a, b in edges]
    return "\n".join(lines) + "\n"
