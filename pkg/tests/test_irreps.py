import json
from math import factorial, sqrt

import numpy as np
import pytest

from permuframe.irreps import (
    IrrepTable,
    RepresentationError,
    basis_matrix,
    build_irrep_table,
    coefficient_vector,
    fs_basis,
    verify_schur,
)
from permuframe.perm import Permutation, compose, lex_ordering
from permuframe.young import partitions_of

R3 = sqrt(3)


def test_trivial_and_sign_tables(s3_fixture_tables, s3_order):
    triv = build_irrep_table((3,), s3_order)
    assert np.array_equal(triv.matrices[:, 0, 0], np.ones(6))
    sign = build_irrep_table((1, 1, 1), s3_order)
    assert sign.matrices[:, 0, 0].tolist() == [1, -1, -1, -1, 1, 1]
    assert s3_fixture_tables[(1, 1, 1)].matrices[:, 0, 0].tolist() == [1, -1, -1, -1, 1, 1]


def test_fixture_generators_verbatim(s3_fixture_tables):
    t = s3_fixture_tables[(2, 1)]
    assert np.array_equal(t.matrix(Permutation.parse("2,1,3")), [[-0.5, R3 / 2], [R3 / 2, 0.5]])
    assert np.array_equal(t.matrix(Permutation.parse("1,3,2")), [[1, 0], [0, -1]])
    assert np.array_equal(t.matrix(Permutation.identity(3)), np.eye(2))


def test_fixture_is_homomorphism(s3_fixture_tables, s3_order):
    t = s3_fixture_tables[(2, 1)]
    for p in s3_order:
        for q in s3_order:
            assert np.abs(t.matrix(compose(p, q)) - t.matrix(p) @ t.matrix(q)).max() < 1e-15
    # composition convention check: pi(12) pi(23) is the value at (123)
    c123 = Permutation.parse("2,3,1")
    prod = t.matrix(Permutation.parse("2,1,3")) @ t.matrix(Permutation.parse("1,3,2"))
    assert np.abs(t.matrix(c123) - prod).max() < 1e-15


def test_fixture_equivalent_to_yor(s3_fixture_tables, s3_order):
    fix = s3_fixture_tables[(2, 1)]
    yor = build_irrep_table((2, 1), s3_order)
    # averaged intertwiner U with U yor(g) = fix(g) U
    rng = np.random.default_rng(0)
    m = rng.standard_normal((2, 2))
    u = sum(fix.matrices[g] @ m @ yor.matrices[g].T for g in range(6))
    u /= np.linalg.norm(u[:, 0])
    assert np.abs(u.T @ u - np.eye(2)).max() < 1e-12
    for g in range(6):
        assert np.abs(u @ yor.matrices[g] - fix.matrices[g] @ u).max() < 1e-12
    # not a mere relabelling of the basis: the intertwiner is not a signed permutation
    assert np.abs(np.abs(u) - np.round(np.abs(u))).max() > 0.1


def test_fixture_only_for_s3():
    with pytest.raises(RepresentationError):
        build_irrep_table((3, 1), source="fixture")


def test_coefficient_vectors(s3_fixture_tables):
    t = s3_fixture_tables[(2, 1)]
    assert np.abs(coefficient_vector(t, 1, 1).values - [1, -.5, 1, -.5, -.5, -.5]).max() < 1e-15
    expected = [0, R3 / 2, 0, -R3 / 2, -R3 / 2, R3 / 2]
    assert np.abs(coefficient_vector(t, 2, 1).values - expected).max() < 1e-15
    assert coefficient_vector(s3_fixture_tables[(3,)], 1, 1).values.tolist() == [1] * 6
    with pytest.raises(RepresentationError):
        coefficient_vector(t, 3, 1)


def test_fs_basis_s3(s3_order):
    basis = fs_basis(3, s3_order)
    assert len(basis) == 6
    assert [b.shape for b in basis].count((2, 1)) == 4
    std = [b for b in basis if b.shape == (2, 1)][0]
    t = build_irrep_table((2, 1), s3_order)
    assert np.allclose(std.vector, coefficient_vector(t, 1, 1).values / R3)
    triv = [b for b in basis if b.shape == (3,)][0].vector
    sign = [b for b in basis if b.shape == (1, 1, 1)][0].vector
    assert abs(triv @ sign) < 1e-15


@pytest.mark.parametrize("n, tol, size", [(3, 1e-10, 6), (4, 1e-10, 24), (5, 1e-9, 120)])
def test_verify_schur(n, tol, size):
    report = verify_schur(n, tol)
    assert report.passed
    assert report.size == size


def test_fs_basis_complete(yor_tables):
    for n in (3, 4, 5):
        b = basis_matrix(fs_basis(n, tables=yor_tables(n)))
        assert np.linalg.matrix_rank(b) == factorial(n)


@pytest.mark.parametrize("shape", partitions_of(4))
def test_right_invariance_s4(shape, yor_tables):
    t = yor_tables(4)[shape]
    order = t.ordering
    for i in range(1, t.dim + 1):
        span = np.array([coefficient_vector(t, k, i).values for k in range(1, t.dim + 1)]).T
        q, _ = np.linalg.qr(span)
        f = span @ np.arange(1, t.dim + 1, dtype=float)
        for y in order:
            idx = [order.index(compose(x, y)) for x in order]
            fy = f[idx]
            assert np.linalg.norm(fy - q @ (q.T @ fy)) < 1e-10


def test_table_json_roundtrip():
    order = lex_ordering(4)
    t = build_irrep_table((2, 1, 1), order)
    data = json.loads(json.dumps(t.to_json()))
    assert data["shape"] == "2,1,1"
    back = IrrepTable.from_json(data, order)
    assert np.array_equal(back.matrices, t.matrices)
