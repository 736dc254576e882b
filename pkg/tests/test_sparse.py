import numpy as np
import pytest

from greenbox import (ConfigError, ConvergenceError, SparseSystem, assemble,
                      build_grid, dense_solve, load_delta, make_field, matvec,
                      solve_general, solve_spd)


def from_dense(mat, symmetric=None):
    mat = np.asarray(mat, dtype=float)
    n = mat.shape[0]
    indptr = [0]
    indices = []
    data = []
    for i in range(n):
        cols = np.flatnonzero(mat[i] != 0.0)
        indices.extend(cols.tolist())
        data.extend(mat[i, cols].tolist())
        indptr.append(len(indices))
    if symmetric is None:
        symmetric = bool(np.array_equal(mat, mat.T))
    return SparseSystem(n_rows=n, indptr=np.array(indptr, dtype=np.int64),
                        indices=np.array(indices, dtype=np.int64),
                        data=np.array(data), symmetric=symmetric)


TWO_BY_TWO = [[2.0, -1.0], [-1.0, 2.0]]


def test_matvec_identity():
    eye = from_dense(np.eye(3))
    x = np.array([1.0, -2.0, 0.5])
    assert np.array_equal(matvec(eye, x), x)


def test_matvec_hand_cases():
    K = from_dense(TWO_BY_TWO)
    assert np.array_equal(matvec(K, np.array([1.0, 1.0])), np.array([1.0, 1.0]))
    assert np.array_equal(matvec(K, np.array([1.0, 0.0])), np.array([2.0, -1.0]))


def test_matvec_length_mismatch():
    K = from_dense(TWO_BY_TWO)
    with pytest.raises(ConfigError):
        matvec(K, np.zeros(3))


def test_solve_spd_hand_elimination():
    K = from_dense(TWO_BY_TWO)
    u, info = solve_spd(K, np.array([1.0, 0.0]), rel_tol=1e-12)
    np.testing.assert_allclose(u, [2 / 3, 1 / 3], atol=1e-12)
    assert info.iterations >= 1


def test_solve_zero_rhs():
    K = from_dense(TWO_BY_TWO)
    u, info = solve_spd(K, np.zeros(2))
    assert np.array_equal(u, np.zeros(2))
    assert info.iterations == 0


def test_solve_spd_requires_symmetry_flag():
    K = from_dense([[2.0, 1.0], [-1.0, 2.0]])
    with pytest.raises(ConfigError):
        solve_spd(K, np.array([1.0, 0.0]))


def test_solve_general_hand_elimination():
    K = from_dense([[2.0, 1.0], [-1.0, 2.0]])
    u, _ = solve_general(K, np.array([3.0, 1.0]), rel_tol=1e-12)
    np.testing.assert_allclose(u, [1.0, 1.0], atol=1e-10)


def test_solvers_agree_on_symmetric_input():
    g = build_grid(2, 1.0, 17)
    K = assemble(make_field("scalar_trig", 2), g)
    rhs = load_delta(g, g.center_index)
    u_cg, _ = solve_spd(K, rhs)
    u_bi, _ = solve_general(K, rhs)
    assert np.abs(u_cg - u_bi).max() <= 1e-8


def test_krylov_matches_dense_oracle_laplacian_n17():
    g = build_grid(2, 1.0, 17)
    K = assemble(make_field("identity", 2), g)
    rhs = load_delta(g, g.center_index)
    u_it, _ = solve_spd(K, rhs)
    u_ref = dense_solve(K, rhs)
    assert np.abs(u_it - u_ref).max() <= 1e-8


def test_krylov_matches_dense_oracle_nonsym_n17():
    g = build_grid(2, 1.0, 17)
    K = assemble(make_field("nonsym_skew", 2), g)
    rhs = load_delta(g, g.center_index)
    u_it, _ = solve_general(K, rhs)
    u_ref = dense_solve(K, rhs)
    assert np.abs(u_it - u_ref).max() <= 1e-8


def test_residual_contract_rechecked():
    g = build_grid(3, 1.0, 9)
    K = assemble(make_field("diag_aniso", 3), g)
    rhs = np.sin(np.arange(K.n_rows, dtype=float))
    for rel_tol in (1e-6, 1e-10):
        u, info = solve_spd(K, rhs, rel_tol=rel_tol)
        res = np.linalg.norm(matvec(K, u) - rhs)
        assert res <= rel_tol * np.linalg.norm(rhs)
        assert info.residual <= rel_tol * np.linalg.norm(rhs)


def test_convergence_failure_carries_residual():
    g = build_grid(2, 1.0, 17)
    K = assemble(make_field("identity", 2), g)
    rhs = load_delta(g, g.center_index)
    with pytest.raises(ConvergenceError) as exc:
        solve_spd(K, rhs, rel_tol=1e-12, max_iter=2)
    assert exc.value.residual is not None and exc.value.residual > 0.0
    with pytest.raises(ConvergenceError):
        solve_general(K, rhs, rel_tol=1e-12, max_iter=2)


def test_determinism_bitwise():
    g = build_grid(2, 1.0, 17)
    K = assemble(make_field("scalar_trig", 2), g)
    rhs = load_delta(g, g.center_index)
    u1, i1 = solve_spd(K, rhs)
    u2, i2 = solve_spd(K, rhs)
    assert np.array_equal(u1, u2)
    assert i1 == i2
    K2 = assemble(make_field("scalar_trig", 2), g)
    assert np.array_equal(K.data, K2.data)


def test_dense_solve_identity_and_hand_case():
    eye = from_dense(np.eye(4))
    rhs = np.array([1.0, 2.0, 3.0, 4.0])
    assert np.array_equal(dense_solve(eye, rhs), rhs)
    np.testing.assert_allclose(dense_solve(from_dense(TWO_BY_TWO),
                                           np.array([1.0, 0.0])),
                               [2 / 3, 1 / 3], atol=1e-15)


def test_dense_solve_singular():
    sing = from_dense([[1.0, 1.0], [1.0, 1.0]])
    with pytest.raises(np.linalg.LinAlgError):
        dense_solve(sing, np.array([1.0, 0.0]))


def test_dense_solve_size_cap():
    n = 4097
    big = SparseSystem(n_rows=n, indptr=np.arange(n + 1, dtype=np.int64),
                       indices=np.arange(n, dtype=np.int64),
                       data=np.ones(n), symmetric=True)
    with pytest.raises(ConfigError):
        dense_solve(big, np.zeros(n))


def test_csr_invariants_on_assembled_systems():
    for dim, n in ((2, 9), (3, 5)):
        g = build_grid(dim, 1.0, n)
        for fam in ("identity", "nonsym_skew"):
            K = assemble(make_field(fam, dim), g)
            assert K.validate()
            assert np.all(K.diagonal() > 0.0)


def test_transpose_roundtrip():
    K = from_dense([[2.0, 1.0, 0.0], [0.0, 3.0, -1.0], [0.5, 0.0, 4.0]])
    np.testing.assert_array_equal(K.transpose().to_dense(), K.to_dense().T)
