import itertools
from math import sqrt

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from permuframe.cayley import (
    EigenError,
    GenSetError,
    adjacent_set,
    all_transpositions_set,
    cayley_edges,
    edges_csv,
    eigenspaces,
    group_eigenspaces,
    parse_genset,
    pi_of_S,
    symmetric_eigen,
)
from permuframe.perm import Permutation, compose, inverse, lex_ordering
from permuframe.young import partitions_of

R3 = sqrt(3)


def cycles(S):
    return sorted(p.cycle_str() for p in S.elements)


def test_presets():
    assert cycles(parse_genset(3, "adjacent")) == ["(1 2)", "(2 3)"]
    assert cycles(parse_genset(3, "all_transpositions")) == ["(1 2)", "(1 3)", "(2 3)"]


def test_custom_sets():
    with pytest.raises(GenSetError, match="inverse"):
        parse_genset(4, "[(1 2 3)]")
    S = parse_genset(4, "[(1 2 3)]", close_inverses=True)
    assert cycles(S) == ["(1 2 3)", "(1 3 2)"]
    S = parse_genset(3, "custom:(1 2),(1 3 2),(1 2 3)")
    assert len(S) == 3
    assert parse_genset(4, "custom:(1 2)(3 4)").elements == (Permutation((2, 1, 4, 3)),)


@pytest.mark.parametrize("spec", ["custom:()", "custom:(1 5)", "custom:(1 2", "bogus"])
def test_bad_custom_sets(spec):
    with pytest.raises(GenSetError):
        parse_genset(3, spec)


def test_pi_of_S_examples(s3_fixture_tables):
    S = adjacent_set(3)
    m = pi_of_S(s3_fixture_tables[(2, 1)], S)
    assert np.abs(m - [[0.5, R3 / 2], [R3 / 2, -0.5]]).max() < 1e-15
    assert pi_of_S(s3_fixture_tables[(3,)], S).tolist() == [[2.0]]
    assert pi_of_S(s3_fixture_tables[(1, 1, 1)], S).tolist() == [[-2.0]]
    with pytest.raises(GenSetError):
        pi_of_S(s3_fixture_tables[(3,)], adjacent_set(4))


def test_jacobi_examples():
    a = np.array([[0.5, R3 / 2], [R3 / 2, -0.5]])
    vals, vecs = symmetric_eigen(a)
    assert np.allclose(vals, [-1, 1], atol=1e-14)
    v1 = vecs[:, 1]
    assert abs(abs(v1 @ np.array([R3, 1]) / 2) - 1) < 1e-14
    vals, vecs = symmetric_eigen(np.zeros((2, 2)))
    assert vals.tolist() == [0, 0]
    assert np.array_equal(vecs, np.eye(2))


def test_jacobi_rejects_nonsymmetric():
    with pytest.raises(EigenError):
        symmetric_eigen([[1.0, 2.0], [0.0, 1.0]])


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12).flatmap(
    lambda d: arrays(np.float64, (d, d), elements=st.floats(-10, 10, allow_nan=False))))
def test_jacobi_against_numpy(m):
    a = (m + m.T) / 2
    vals, vecs = symmetric_eigen(a)
    ref = np.linalg.eigvalsh(a)
    scale = max(1.0, np.linalg.norm(a))
    assert np.abs(vals - ref).max() < 1e-10 * scale
    assert np.abs(vecs.T @ vecs - np.eye(len(a))).max() < 1e-12
    assert np.abs(a @ vecs - vecs * vals).max() < 1e-10 * scale


def test_jacobi_larger_matrix():
    rng = np.random.default_rng(3)
    m = rng.standard_normal((60, 60))
    a = m + m.T
    vals, vecs = symmetric_eigen(a)
    assert np.abs(vals - np.linalg.eigvalsh(a)).max() < 1e-11
    assert np.abs(vecs.T @ vecs - np.eye(60)).max() < 1e-12


def test_grouping_examples(s3_fixture_tables):
    spaces = eigenspaces(s3_fixture_tables[(2, 1)], adjacent_set(3))
    assert [round(s.eigenvalue, 12) for s in spaces] == [-1, 1]
    assert [s.multiplicity for s in spaces] == [1, 1]

    std = s3_fixture_tables[(2, 1)]
    S = all_transpositions_set(3)
    direct = sum(std.matrix(a) for a in S.elements)
    assert np.abs(direct).max() < 1e-15
    spaces = eigenspaces(std, S)
    assert len(spaces) == 1 and spaces[0].multiplicity == 2
    assert abs(spaces[0].eigenvalue) < 1e-15

    for S in (adjacent_set(3), all_transpositions_set(3)):
        (triv,) = eigenspaces(s3_fixture_tables[(3,)], S)
        assert triv.eigenvalue == len(S)
        assert triv.basis.tolist() == [[1.0]]


def test_grouping_merges_close_values():
    vals = np.array([1.0, 1.0 + 1e-10, 3.0])
    spaces = group_eigenspaces(vals, np.eye(3))
    assert [s.multiplicity for s in spaces] == [2, 1]
    assert spaces[0].eigenvalue == pytest.approx(1.0 + 5e-11, abs=1e-15)
    spaces = group_eigenspaces(vals, np.eye(3), group_tol=1e-12)
    assert len(spaces) == 3


@pytest.mark.parametrize("preset", [adjacent_set, all_transpositions_set])
@pytest.mark.parametrize("shape", partitions_of(4))
def test_spectral_invariants_s4(preset, shape, yor_tables):
    S = preset(4)
    t = yor_tables(4)[shape]
    m = pi_of_S(t, S)
    assert np.abs(m - m.T).max() < 1e-12
    spaces = eigenspaces(t, S)
    assert sum(s.multiplicity for s in spaces) == t.dim
    for s in spaces:
        assert np.abs(s.basis @ m - s.eigenvalue * s.basis).max() < 1e-9
        assert -len(S) - 1e-12 <= s.eigenvalue <= len(S) + 1e-12
        assert np.abs(s.basis @ s.basis.T - np.eye(s.multiplicity)).max() < 1e-12
    for a, b in itertools.combinations(spaces, 2):
        assert np.abs(a.basis @ b.basis.T).max() < 1e-10


def test_degenerate_eigenspaces_appear_for_n4(yor_tables):
    mults = [s.multiplicity for t in yor_tables(4).values()
             for s in eigenspaces(t, all_transpositions_set(4))]
    assert max(mults) > 1


def brute_edges(n, S, order):
    out = set()
    for a, x in enumerate(order):
        for b, y in enumerate(order):
            if a < b and compose(inverse(x), y) in S:
                out.add((a, b))
    return out


@pytest.mark.parametrize("n, preset, count, degree", [
    (3, adjacent_set, 6, 2), (3, all_transpositions_set, 9, 3), (4, adjacent_set, 36, 3)])
def test_edges(n, preset, count, degree):
    order = lex_ordering(n)
    S = preset(n)
    edges = cayley_edges(n, S, order)
    assert set(edges) == brute_edges(n, S, order)
    assert len(edges) == count
    deg = np.bincount(np.array(edges).ravel(), minlength=len(order))
    assert (deg == degree).all()


def test_permutahedron_p3_is_a_cycle():
    edges = cayley_edges(3, adjacent_set(3), lex_ordering(3))
    # a connected 2-regular graph on 6 vertices is a 6-cycle
    adj = {v: set() for v in range(6)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    seen, stack = {0}, [0]
    while stack:
        for w in adj[stack.pop()] - seen:
            seen.add(w)
            stack.append(w)
    assert len(seen) == 6


def test_single_edge_s2():
    order = lex_ordering(2)
    assert cayley_edges(2, parse_genset(2, "custom:(1 2)"), order) == [(0, 1)]
    assert edges_csv([(0, 1)], order) == 'perm_a,perm_b\n"1,2","2,1"\n'
