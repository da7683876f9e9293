"""Compatible Frobenius-Schur frames on L^2(S_n).

For an irrep pi, a row index i and an eigenvalue lam of pi(S), the space
Z(pi, i, lam) consists of the functions z -> R_i(z) X with X in the
lam-eigenspace of pi(S), R_i(z) being row i of pi(z). The normalized lift

    theta(X) = sqrt(d/n!) * sum_k X_k pi_{k,i}

maps the eigenspace isometrically onto Z(pi, i, lam). A frame for L^2(S_n)
is assembled by lifting a frame of every eigenspace through every row i.
Those blocks are mutually orthogonal, so frame bounds, duals and audits can
all be computed block by block in R^d.
"""

from __future__ import annotations

import json
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from math import factorial, sqrt
from pathlib import Path
from typing import Iterable

import numpy as np

from .cayley import EIGEN_TOL, GROUP_TOL, Eigenspace, GeneratingSet, eigenspaces, pi_of_S, symmetric_eigen
from .irreps import IrrepTable, build_all_tables, row_functions
from .perm import GroupOrdering, Permutation, check_group_size, lex_ordering, make_ordering, max_n
from .young import Partition, format_partition, parse_partition, partitions_of

log = logging.getLogger(__name__)

SPAN_TOL = 1e-10
FRAME_TOL = 1e-10
DENSE_MAX_N = 5
FRAME_MAX_N = 6


class FrameError(ValueError):
    pass


class NotAFrameError(FrameError):
    pass


class CompatibilityError(FrameError):
    pass


def lift_scale(table: IrrepTable) -> float:
    return sqrt(table.dim / factorial(table.n))


def _check_in_space(X: np.ndarray, space: Eigenspace, tol: float = SPAN_TOL) -> None:
    resid = np.linalg.norm(X - space.project(X))
    if resid > tol * max(1.0, np.linalg.norm(X)):
        raise CompatibilityError(
            f"vector lies outside the eigenspace for eigenvalue {space.eigenvalue:g} "
            f"(residual {resid:.3g})")


def theta_lift(table: IrrepTable, i: int, space: Eigenspace, X, normalized: bool = True) -> np.ndarray:
    """Lift X from the eigenspace into Z(pi, i, lam) as a signal on S_n."""
    X = np.asarray(X, dtype=float)
    if X.shape != (table.dim,):
        raise FrameError(f"coefficient vector must have length {table.dim}")
    _check_in_space(X, space)
    out = row_functions(table, i) @ X
    return lift_scale(table) * out if normalized else out


@dataclass(frozen=True)
class ZSpaceBasis:
    shape: Partition
    i: int
    eigenvalue: float
    atoms: np.ndarray  # (dim E, n!)


def z_space_basis(table: IrrepTable, i: int, space: Eigenspace) -> ZSpaceBasis:
    atoms = np.array([theta_lift(table, i, space, x) for x in space.basis])
    return ZSpaceBasis(table.shape, i, space.eigenvalue, atoms)


@dataclass(frozen=True)
class FrameAtom:
    shape: Partition
    i: int
    eigenvalue: float
    coeff: np.ndarray  # X in R^d
    scale: float       # signal = scale * R_i(z) X
    signal: np.ndarray

    @property
    def key(self) -> tuple[Partition, int, float]:
        return self.shape, self.i, self.eigenvalue


# ---------------------------------------------------------------------------
# eigenspace frame policies

@dataclass(frozen=True)
class EigenspaceFramePolicy:
    """Chooses a frame for every eigenspace E_lam(pi(S)).

    ``onb`` uses the orthonormal eigenbasis, ``repeat`` lists it ``r``
    times, ``custom`` takes explicit vectors (ambient R^d coordinates) per
    (shape, eigenvalue[, i]) and falls back to ``onb`` elsewhere.
    """

    kind: str = "onb"
    repeat: int = 1
    custom: tuple = ()  # entries (shape, eigenvalue, i or None, vectors)
    source_path: str | None = None

    def describe(self) -> str:
        if self.kind == "repeat":
            return f"repeat:{self.repeat}"
        if self.kind == "custom":
            return f"custom:{self.source_path}" if self.source_path else "custom"
        return "onb"

    def _custom_vectors(self, shape, i, space, group_tol):
        fallback = None
        for c_shape, c_lam, c_i, vectors in self.custom:
            if c_shape == shape and abs(c_lam - space.eigenvalue) <= max(group_tol, 1e-9):
                if c_i == i:
                    return vectors
                if c_i is None:
                    fallback = vectors
        return fallback

    def vectors(self, shape: Partition, i: int, space: Eigenspace,
                group_tol: float = GROUP_TOL) -> np.ndarray:
        if self.kind == "onb":
            return space.basis
        if self.kind == "repeat":
            return np.concatenate([space.basis] * self.repeat)
        if self.kind == "custom":
            vecs = self._custom_vectors(shape, i, space, group_tol)
            if vecs is None:
                return space.basis
            vecs = np.atleast_2d(np.asarray(vecs, dtype=float))
            for x in vecs:
                _check_in_space(x, space)
            if vecs.shape[0] == 0 or np.linalg.matrix_rank(vecs @ space.basis.T, tol=1e-9) < space.multiplicity:
                raise FrameError(
                    f"custom vectors do not span the eigenspace of {format_partition(shape)} "
                    f"for eigenvalue {space.eigenvalue:g}")
            return vecs
        raise FrameError(f"unknown policy {self.kind!r}")


def onb_policy() -> EigenspaceFramePolicy:
    return EigenspaceFramePolicy("onb")


def repeat_policy(r: int) -> EigenspaceFramePolicy:
    if r < 1:
        raise FrameError("repeat count must be at least 1")
    return EigenspaceFramePolicy("repeat", repeat=r)


def custom_policy(entries: Iterable[dict], source_path: str | None = None) -> EigenspaceFramePolicy:
    """Entries look like ``{"shape": "2,1", "lambda": 0, "i": 1, "vectors": [[1, 0], ...]}``;
    ``i`` may be omitted to apply to every row index."""
    custom = []
    for e in entries:
        shape = parse_partition(e["shape"]) if isinstance(e["shape"], str) else tuple(e["shape"])
        vectors = np.array(e["vectors"], dtype=float)
        vectors.setflags(write=False)
        custom.append((shape, float(e["lambda"]), e.get("i"), vectors))
    return EigenspaceFramePolicy("custom", custom=tuple(custom), source_path=source_path)


def load_policy(path: str | Path) -> EigenspaceFramePolicy:
    data = json.loads(Path(path).read_text())
    entries = data["frames"] if isinstance(data, dict) else data
    return custom_policy(entries, str(path))


def parse_policy(spec: str) -> EigenspaceFramePolicy:
    if spec == "onb":
        return onb_policy()
    if spec.startswith("repeat"):
        _, _, r = spec.partition(":")
        if not r:
            r = spec[len("repeat"):].strip("()")
        try:
            return repeat_policy(int(r))
        except ValueError:
            raise FrameError(f"bad repeat policy {spec!r}") from None
    if spec.startswith("custom:"):
        return load_policy(spec[len("custom:"):])
    raise FrameError(f"unknown policy {spec!r}; expected onb, repeat:R or custom:FILE")


# ---------------------------------------------------------------------------
# frames

@dataclass
class Frame:
    atoms: list[FrameAtom]
    ordering: GroupOrdering
    metadata: dict = field(default_factory=dict)
    tables: dict = field(default_factory=dict, repr=False)
    _bounds: tuple | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.atoms)

    @property
    def n(self) -> int:
        return self.ordering.n

    def matrix(self) -> np.ndarray:
        """Synthesis matrix transposed: row x is atom x."""
        if not self.atoms:
            return np.zeros((0, len(self.ordering)))
        return np.array([a.signal for a in self.atoms])

    def table(self, shape: Partition) -> IrrepTable:
        if shape not in self.tables:
            source = self.metadata.get("source", "yor")
            self.tables.update(build_all_tables(self.n, self.ordering, source))
        return self.tables[shape]

    def blocks(self) -> dict[tuple, list[int]]:
        """Atom indices grouped by (shape, i, eigenvalue)."""
        out: dict[tuple, list[int]] = defaultdict(list)
        for idx, a in enumerate(self.atoms):
            out[a.key].append(idx)
        return dict(out)


def build_compatible_frame(n: int, S: GeneratingSet, policy: EigenspaceFramePolicy | None = None,
                           source: str = "yor", ordering: GroupOrdering | None = None,
                           eigen_tol: float = EIGEN_TOL, group_tol: float = GROUP_TOL,
                           tables: dict[Partition, IrrepTable] | None = None) -> Frame:
    """Union over irreps pi, rows i and eigenvalues lam of the lifted eigenspace frames."""
    check_group_size(n, max_n(FRAME_MAX_N))
    if S.n != n:
        raise FrameError(f"generating set is for S_{S.n}, not S_{n}")
    policy = policy or onb_policy()
    if ordering is None:
        ordering = make_ordering("paper_s3", 3) if source == "fixture" else lex_ordering(n)
    if tables is None:
        tables = build_all_tables(n, ordering, source)
    atoms = []
    spectra = {}
    for shape, table in tables.items():
        spaces = eigenspaces(table, S, eigen_tol, group_tol)
        spectra[format_partition(shape)] = [[s.eigenvalue, s.multiplicity] for s in spaces]
        scale = lift_scale(table)
        for i in range(1, table.dim + 1):
            rows = row_functions(table, i)
            for space in spaces:
                vecs = policy.vectors(shape, i, space, group_tol)
                for X in vecs:
                    X = np.array(X, dtype=float)
                    atoms.append(FrameAtom(shape, i, space.eigenvalue, X, scale, scale * (rows @ X)))
    meta = {
        "n": n,
        "genset": S.describe(),
        "policy": policy.describe(),
        "source": source,
        "ordering": ordering.ordering_id,
        "eigen_tol": eigen_tol,
        "group_tol": group_tol,
        "spectra": spectra,
    }
    log.info("built frame with %d atoms for n=%d, %s", len(atoms), n, S.describe())
    return Frame(atoms, ordering, meta, dict(tables))


def frame_operator(frame: Frame) -> np.ndarray:
    psi = frame.matrix()
    return psi.T @ psi


@dataclass(frozen=True)
class FrameBounds:
    lower: float
    upper: float

    @property
    def condition(self) -> float:
        return self.upper / self.lower

    def __iter__(self):
        return iter((self.lower, self.upper, self.condition))


def _block_operator(frame: Frame, idxs: list[int]) -> np.ndarray:
    coeffs = np.array([frame.atoms[k].coeff for k in idxs])
    return coeffs.T @ coeffs


def frame_bounds(frame: Frame, method: str = "auto", tol: float = EIGEN_TOL) -> FrameBounds:
    """Optimal frame bounds: extreme eigenvalues of the frame operator.

    ``dense`` diagonalizes the n! x n! operator. ``blockwise`` relies on
    the atoms being compatible lifts: on each Z(pi, i, lam) the operator is
    isometric to sum X X^T, and the blocks must cover all n! dimensions.
    """
    if method == "auto":
        method = "dense" if frame.n <= DENSE_MAX_N else "blockwise"
    if method == "dense":
        vals, _ = symmetric_eigen(frame_operator(frame), tol)
        lower, upper = float(vals[0]), float(vals[-1])
    elif method == "blockwise":
        lower, upper, covered = np.inf, 0.0, 0
        for idxs in frame.blocks().values():
            vals, _ = symmetric_eigen(_block_operator(frame, idxs), tol)
            nonzero = vals[vals > FRAME_TOL]
            covered += len(nonzero)
            if len(nonzero):
                lower, upper = min(lower, nonzero[0]), max(upper, nonzero[-1])
        if covered < len(frame.ordering):
            lower = 0.0
        lower, upper = float(lower), float(upper)
    else:
        raise FrameError(f"unknown bounds method {method!r}")
    if lower < FRAME_TOL:
        raise NotAFrameError(f"atoms do not span L^2(S_{frame.n}): lower bound {lower:.3g}")
    frame._bounds = (lower, upper)
    return FrameBounds(lower, upper)


def analysis(frame: Frame, f) -> np.ndarray:
    """Frame coefficients <f, psi_x>, in atom order (tags live on frame.atoms)."""
    f = np.asarray(f, dtype=float)
    if f.shape != (len(frame.ordering),):
        raise FrameError(f"signal must have length {len(frame.ordering)}, got {f.shape}")
    return frame.matrix() @ f


def synthesize(frame: Frame, coeffs) -> np.ndarray:
    coeffs = np.asarray(coeffs, dtype=float)
    if coeffs.shape != (len(frame),):
        raise FrameError(f"expected {len(frame)} coefficients, got {coeffs.shape}")
    return frame.matrix().T @ coeffs


def canonical_dual(frame: Frame) -> Frame:
    """Dual atoms S^-1 psi_x, computed per block as lifts of C^+ X.

    C = sum X X^T over the block's atoms; its pseudo-inverse acts on the
    eigenspace, which the block's coefficient vectors span.
    """
    frame_bounds(frame, "blockwise")
    dual = list(frame.atoms)
    for idxs in frame.blocks().values():
        c = _block_operator(frame, idxs)
        vals, vecs = symmetric_eigen(c)
        inv_vals = np.where(vals > FRAME_TOL, 1.0 / np.where(vals > FRAME_TOL, vals, 1.0), 0.0)
        c_pinv = (vecs * inv_vals) @ vecs.T
        for k in idxs:
            a = frame.atoms[k]
            new_x = c_pinv @ a.coeff
            rows = row_functions(frame.table(a.shape), a.i)
            dual[k] = FrameAtom(a.shape, a.i, a.eigenvalue, new_x, a.scale, a.scale * (rows @ new_x))
    meta = dict(frame.metadata, dual_of=frame.metadata.get("policy", "frame"))
    return Frame(dual, frame.ordering, meta, frame.tables)


# ---------------------------------------------------------------------------
# compatibility audit and recovery of the eigenspace frames

@dataclass(frozen=True)
class AtomAudit:
    index: int
    shape: Partition
    i: int
    eigenvalue: float
    eigen_residual: float
    lift_residual: float


@dataclass(frozen=True)
class AuditReport:
    atoms: list[AtomAudit]
    tol: float

    @property
    def max_eigen_residual(self) -> float:
        return max((a.eigen_residual for a in self.atoms), default=0.0)

    @property
    def max_lift_residual(self) -> float:
        return max((a.lift_residual for a in self.atoms), default=0.0)

    @property
    def failures(self) -> list[AtomAudit]:
        return [a for a in self.atoms if max(a.eigen_residual, a.lift_residual) >= self.tol]

    @property
    def passed(self) -> bool:
        return not self.failures


def audit_frame(frame: Frame, S: GeneratingSet, tol: float = 1e-9) -> AuditReport:
    """Check every atom equals scale * R_i(z) X with pi(S) X = lam X."""
    pis = {}
    records = []
    for idx, a in enumerate(frame.atoms):
        table = frame.table(a.shape)
        if a.shape not in pis:
            pis[a.shape] = pi_of_S(table, S)
        eig_res = float(np.abs(pis[a.shape] @ a.coeff - a.eigenvalue * a.coeff).max())
        expected = a.scale * (row_functions(table, a.i) @ a.coeff)
        lift_res = float(np.abs(a.signal - expected).max())
        records.append(AtomAudit(idx, a.shape, a.i, a.eigenvalue, eig_res, lift_res))
    return AuditReport(records, tol)


@dataclass(frozen=True)
class RecoveredAtom:
    index: int
    shape: Partition
    i: int
    eigenvalue: float
    coeff: np.ndarray
    residual: float  # distance of the signal from its recovered lift


def recover_eigenspace_frames(frame: Frame, S: GeneratingSet) -> list[RecoveredAtom]:
    """Assign each atom its (shape, i, lam) from the signal alone.

    The adjoint of the lift recovers X; the row block holding (almost) all
    of the atom's energy identifies (shape, i), and the Rayleigh quotient
    of pi(S) gives lam.
    """
    psi = frame.matrix()
    best: list[tuple | None] = [None] * len(frame)
    for shape in _shapes(frame):
        table = frame.table(shape)
        scale = lift_scale(table)
        # coords[m, i, k] = <psi_m, scale * pi_{k,i}>
        d = table.dim
        coords = scale * (psi @ table.matrices.reshape(len(table.ordering), d * d)).reshape(-1, d, d)
        energy = (coords ** 2).sum(axis=2)
        for m in range(len(frame)):
            i = int(np.argmax(energy[m]))
            if best[m] is None or energy[m, i] > best[m][0]:
                best[m] = (energy[m, i], shape, i + 1, coords[m, i].copy())
    out = []
    pis = {}
    for m, (_, shape, i, X) in enumerate(best):
        table = frame.table(shape)
        if shape not in pis:
            pis[shape] = pi_of_S(table, S)
        norm2 = X @ X
        lam = float(X @ pis[shape] @ X / norm2) if norm2 > 0 else 0.0
        lifted = lift_scale(table) * (row_functions(table, i) @ X)
        out.append(RecoveredAtom(m, shape, i, lam, X, float(np.linalg.norm(lifted - psi[m]))))
    return out


def _shapes(frame: Frame) -> list[Partition]:
    return partitions_of(frame.n)


# ---------------------------------------------------------------------------
# isotypic projections

def project_w_gamma(f, table: IrrepTable) -> np.ndarray:
    """Orthogonal projection onto the span of all coefficient functions of one irrep."""
    f = np.asarray(f, dtype=float)
    basis = lift_scale(table) * table.matrices.reshape(len(table.ordering), -1)
    return basis @ (basis.T @ f)


def project_z(f, table: IrrepTable, space: Eigenspace) -> np.ndarray:
    """Projection onto Z(pi, lam), the sum over rows i of Z(pi, i, lam)."""
    f = np.asarray(f, dtype=float)
    scale = lift_scale(table)
    out = np.zeros_like(f)
    for i in range(1, table.dim + 1):
        atoms = scale * (row_functions(table, i) @ space.basis.T)  # (n!, mult)
        out += atoms @ (atoms.T @ f)
    return out


# ---------------------------------------------------------------------------
# serialization

def frame_to_json(frame: Frame) -> dict:
    labels = frame.ordering.labels()
    return {
        **{k: frame.metadata.get(k) for k in ("n", "genset", "policy", "source")},
        "ordering": frame.ordering.ordering_id,
        "vertices": labels,
        "tolerances": {k: frame.metadata.get(k) for k in ("eigen_tol", "group_tol")},
        "spectra": frame.metadata.get("spectra"),
        "atoms": [
            {
                "shape": format_partition(a.shape),
                "i": a.i,
                "lambda": a.eigenvalue,
                "coeff_X": a.coeff.tolist(),
                "scale": a.scale,
                "signal": dict(zip(labels, a.signal.tolist())),
            }
            for a in frame.atoms
        ],
    }


def frame_from_json(data: dict) -> Frame:
    perms = tuple(Permutation.parse(s) for s in data["vertices"])
    ordering = GroupOrdering(data.get("ordering", "custom"), perms)
    atoms = []
    for a in data["atoms"]:
        signal = np.array([a["signal"][str(p)] for p in perms], dtype=float)
        atoms.append(FrameAtom(parse_partition(a["shape"]), int(a["i"]), float(a["lambda"]),
                               np.array(a["coeff_X"], dtype=float), float(a["scale"]), signal))
    meta = {k: data.get(k) for k in ("n", "genset", "policy", "source", "spectra")}
    meta.update(data.get("tolerances") or {})
    meta["ordering"] = ordering.ordering_id
    return Frame(atoms, ordering, meta)


def save_frame(frame: Frame, path: str | Path) -> None:
    Path(path).write_text(json.dumps(frame_to_json(frame), indent=1))


def load_frame(path: str | Path) -> Frame:
    return frame_from_json(json.loads(Path(path).read_text()))
