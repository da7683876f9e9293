"""Invariant suites run by ``permuframe verify``."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial

import numpy as np

from . import reference
from .cayley import GeneratingSet, eigenspaces, pi_of_S
from .frames import (
    Frame,
    audit_frame,
    build_compatible_frame,
    frame_bounds,
    frame_operator,
    recover_eigenspace_frames,
    theta_lift,
)
from .irreps import IrrepTable, basis_matrix, build_all_tables, coefficient_vector, fs_basis, row_functions
from .perm import GroupOrdering, compose
from .young import Partition, dimension


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    tol: float
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" {self.detail}" if self.detail else ""
        if self.tol == 0.0:
            return f"{status} {self.name} value={self.value:g}{extra}"
        return f"{status} {self.name} value={self.value:.3e} tol={self.tol:.0e}{extra}"


def _below(name, value, tol, detail=""):
    return Check(name, float(value), tol, bool(value < tol), detail)


def _equal(name, value, expected):
    return Check(name, float(value), 0.0, value == expected, f"expected={expected}")


def check_homomorphism(tables: dict[Partition, IrrepTable], samples: int = 2000,
                       seed: int = 0) -> Check:
    worst = 0.0
    rng = np.random.default_rng(seed)
    for table in tables.values():
        ordering = table.ordering
        size = len(ordering)
        if size ** 2 <= samples:
            pairs = itertools.product(range(size), repeat=2)
        else:
            pairs = rng.integers(0, size, size=(samples, 2))
        for a, b in pairs:
            ab = ordering.index(compose(ordering[a], ordering[b]))
            diff = table.matrices[ab] - table.matrices[a] @ table.matrices[b]
            worst = max(worst, float(np.abs(diff).max()))
    return _below("homomorphism", worst, 1e-12)


def check_schur(n: int, tables: dict[Partition, IrrepTable], tol: float = 1e-10) -> list[Check]:
    basis = basis_matrix(fs_basis(n, tables=tables))
    gram = basis @ basis.T
    return [
        _equal("schur_basis_size", len(basis), factorial(n)),
        _below("schur_gram", np.abs(gram - np.eye(len(basis))).max(), tol),
    ]


def check_spectra(tables, S: GeneratingSet) -> list[Check]:
    sym, resid, dims, ortho = 0.0, 0.0, 0, 0.0
    total = 0
    for table in tables.values():
        m = pi_of_S(table, S)
        sym = max(sym, float(np.abs(m - m.T).max()))
        spaces = eigenspaces(table, S)
        for sp in spaces:
            resid = max(resid, float(np.abs(sp.basis @ m - sp.eigenvalue * sp.basis).max()))
        stacked = np.concatenate([sp.basis for sp in spaces])
        ortho = max(ortho, float(np.abs(stacked @ stacked.T - np.eye(len(stacked))).max()))
        dims += sum(sp.multiplicity for sp in spaces) == table.dim
        total += 1
    return [
        _below("pi_S_symmetric", sym, 1e-12),
        _below("eigen_residual", resid, 1e-9),
        _below("eigenspace_orthonormal", ortho, 1e-10),
        _equal("decomposition_dims", dims, total),
    ]


def check_isometry(tables, S: GeneratingSet, per_triple: int = 20, seed: int = 0) -> Check:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for table in tables.values():
        for sp in eigenspaces(table, S):
            for i in range(1, table.dim + 1):
                for _ in range(per_triple):
                    X = rng.standard_normal(sp.multiplicity) @ sp.basis
                    lifted = theta_lift(table, i, sp, X)
                    worst = max(worst, abs(np.linalg.norm(lifted) - np.linalg.norm(X)))
    return _below("isometry", worst, 1e-10)


def check_frame(frame: Frame, S: GeneratingSet, parseval: bool = True) -> list[Check]:
    checks = []
    audit = audit_frame(frame, S)
    checks.append(_below("compatibility_eigen", audit.max_eigen_residual, 1e-9,
                         f"failing_atoms={len(audit.failures)}"))
    checks.append(_below("compatibility_lift", audit.max_lift_residual, 1e-9))

    psi = frame.matrix()
    block_ids = {key: k for k, key in enumerate(frame.blocks())}
    ids = np.array([block_ids[a.key] for a in frame.atoms])
    gram = np.abs(psi @ psi.T)
    cross = float(gram[ids[:, None] != ids[None, :]].max(initial=0.0))
    checks.append(_below("block_orthogonality", cross, 1e-10))

    recovered = recover_eigenspace_frames(frame, S)
    rt = 0.0
    mislabeled = 0
    for r, a in zip(recovered, frame.atoms):
        rt = max(rt, r.residual, float(np.abs(r.coeff - a.coeff).max()))
        mislabeled += (r.shape, r.i) != (a.shape, a.i) or abs(r.eigenvalue - a.eigenvalue) > 1e-8
    checks.append(_below("recovery_roundtrip", rt, 1e-10, f"mislabeled={mislabeled}"))
    if mislabeled:
        checks[-1] = Check("recovery_roundtrip", rt, 1e-10, False, f"mislabeled={mislabeled}")

    if parseval:
        try:
            lower, upper, _ = frame_bounds(frame)
            err = max(abs(lower - 1.0), abs(upper - 1.0))
        except ValueError:
            err = float("inf")
        checks.append(_below("parseval_bounds", err, 1e-10))
        if frame.n <= 5:
            op = frame_operator(frame)
            checks.append(_below("parseval_operator", np.abs(op - np.eye(len(op))).max(), 1e-10))
    return checks


def check_s3_reference(tables, S: GeneratingSet) -> list[Check]:
    """Compare fixture-source S_3 values with the hand-computed reference."""
    worst_coeff = 0.0
    for (shape, k, i), ref in reference.COEFFICIENT_FUNCTIONS.items():
        vals = coefficient_vector(tables[shape], k, i).values
        worst_coeff = max(worst_coeff, float(np.abs(vals - reference.as_array(ref)).max()))
    worst_eig = 0.0
    worst_z = 0.0
    found = 0
    for shape, table in tables.items():
        for sp in eigenspaces(table, S):
            key_vec = reference.STANDARD_EIGENVECTORS.get(round(sp.eigenvalue))
            if shape == (2, 1) and key_vec is not None:
                worst_eig = max(worst_eig, reference.collinear_error(sp.basis[0], key_vec),
                                abs(sp.eigenvalue - round(sp.eigenvalue)))
            for i in range(1, table.dim + 1):
                ref = reference.Z_SPANS.get((shape, i, float(round(sp.eigenvalue))))
                if ref is None:
                    continue
                found += 1
                z = row_functions(table, i) @ sp.basis[0]
                worst_z = max(worst_z, reference.collinear_error(z, ref))
    return [
        _below("reference_coefficients", worst_coeff, 1e-12),
        _below("reference_eigenvectors", worst_eig, 1e-12),
        Check("reference_zspaces", worst_z, 1e-12,
              worst_z < 1e-12 and found == len(reference.Z_SPANS), f"matched={found}"),
    ]


def run_checks(n: int, S: GeneratingSet, source: str = "yor", ordering: GroupOrdering | None = None,
               frame: Frame | None = None) -> list[Check]:
    if frame is None:
        frame = build_compatible_frame(n, S, source=source, ordering=ordering)
        parseval = True
    else:
        parseval = frame.metadata.get("policy") == "onb"
    tables = frame.tables or build_all_tables(n, frame.ordering, source)
    frame.tables.update(tables)
    checks = [
        _equal("dimension_sum", sum(dimension(s) ** 2 for s in tables), factorial(n)),
        check_homomorphism(tables),
        *check_schur(n, tables),
        *check_spectra(tables, S),
        check_isometry(tables, S),
        *check_frame(frame, S, parseval),
    ]
    if source == "fixture":
        checks += check_s3_reference(tables, S)
    return checks
