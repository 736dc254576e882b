import numpy as np
import pytest

from greenbox import (ConfigError, SourcePlacementError, assemble, build_grid,
                      gradient_field, load_delta, make_field, transpose_field)

# reference Q1 stiffness of -Laplace on a unit square, corners in C order
# (0,0), (0,1), (1,0), (1,1): diagonal 2/3, edge-adjacent -1/6, opposite -1/3
_Q1_UNIT = np.array([
    [2 / 3, -1 / 6, -1 / 6, -1 / 3],
    [-1 / 6, 2 / 3, -1 / 3, -1 / 6],
    [-1 / 6, -1 / 3, 2 / 3, -1 / 6],
    [-1 / 3, -1 / 6, -1 / 6, 2 / 3],
])


def test_grid_counting_2d():
    g = build_grid(2, 1.0, 5)
    assert g.n_nodes == 25
    assert g.n_interior == 9
    assert g.h == pytest.approx(0.5)


def test_grid_counting_3d():
    g = build_grid(3, 2.0, 9)
    assert g.n_nodes == 729
    assert g.h == pytest.approx(0.5)


def test_grid_parity_rule():
    with pytest.raises(ConfigError):
        build_grid(2, 1.0, 4)
    with pytest.raises(ConfigError):
        build_grid(2, 1.0, 3)
    with pytest.raises(ConfigError):
        build_grid(2, -1.0, 5)


def test_origin_is_exact_node():
    for d, n in ((2, 9), (3, 7)):
        g = build_grid(d, 1.7, n)
        assert np.all(g.coords(g.center_index) == 0.0)


def test_index_coordinate_roundtrip():
    g = build_grid(2, 1.0, 7)
    for idx in range(g.n_nodes):
        assert g.node_at(g.coords(idx)) == idx


def test_interior_boundary_classification():
    g = build_grid(3, 1.0, 5)
    assert g.boundary_mask.sum() == g.n_nodes - g.n_interior
    assert g.n_interior == 27


def _laplace_stencil(n, R):
    """Assembled interior row of the center node as a dict offset -> value."""
    g = build_grid(2, R, n)
    f = make_field("identity", 2)
    K = assemble(f, g)
    ii = g.interior_index[g.center_index]
    row = {}
    start, stop = K.indptr[ii], K.indptr[ii + 1]
    for col, val in zip(K.indices[start:stop], K.data[start:stop]):
        row[int(col) - ii] = val
    return row, n - 2


@pytest.mark.parametrize("n,R", [(9, 1.0), (17, 3.0)])
def test_laplace_stencil_h_independent(n, R):
    # oracle: four unit-square element matrices summed around one node
    diag = 4 * _Q1_UNIT[0, 0]
    edge = 2 * _Q1_UNIT[0, 1]
    corner = _Q1_UNIT[0, 3]
    row, m = _laplace_stencil(n, R)
    assert row[0] == pytest.approx(diag, rel=1e-14)        # 8/3
    for off in (1, -1, m, -m):
        assert row[off] == pytest.approx(edge, rel=1e-14)  # -1/3
    for off in (m + 1, m - 1, -m + 1, -m - 1):
        assert row[off] == pytest.approx(corner, rel=1e-14)
    assert diag == pytest.approx(8 / 3)
    assert edge == pytest.approx(-1 / 3)
    assert corner == pytest.approx(-1 / 3)


def test_interior_row_sums_vanish():
    g = build_grid(2, 1.0, 9)
    K = assemble(make_field("identity", 2), g)
    dense = K.to_dense()
    # rows whose full 3x3 neighborhood is interior
    inner = []
    for idx in g.interior_ids:
        mi = np.array(g.multi(idx))
        if np.all(mi >= 2) and np.all(mi <= g.n - 3):
            inner.append(g.interior_index[idx])
    assert inner
    np.testing.assert_allclose(dense[inner].sum(axis=1), 0.0, atol=1e-13)


@pytest.mark.parametrize("dim,n", [(2, 9), (3, 5)])
def test_transpose_identity_all_families(dim, n):
    g = build_grid(dim, 1.0, n)
    for fam in ("identity", "scalar_trig", "diag_aniso", "nonsym_skew"):
        f = make_field(fam, dim)
        K = assemble(f, g).to_dense()
        Kt = assemble(transpose_field(f), g).to_dense()
        scale = np.abs(K).max()
        assert np.abs(Kt - K.T).max() <= 1e-15 * scale


def test_symmetric_field_symmetric_matrix():
    g = build_grid(2, 1.0, 9)
    K = assemble(make_field("scalar_trig", 2), g)
    dense = K.to_dense()
    assert K.symmetric
    assert np.abs(dense - dense.T).max() <= 1e-15 * np.abs(dense).max()


def test_stencil_locality():
    g = build_grid(2, 1.0, 9)
    K = assemble(make_field("diag_aniso", 2), g)
    dense = K.to_dense()
    m = g.n - 2
    for i in range(K.n_rows):
        for j in range(K.n_rows):
            mi = np.array(np.unravel_index(i, (m, m)))
            mj = np.array(np.unravel_index(j, (m, m)))
            if np.abs(mi - mj).max() > 1:
                assert dense[i, j] == 0.0


def test_dimension_mismatch():
    with pytest.raises(ConfigError):
        assemble(make_field("identity", 3), build_grid(2, 1.0, 5))


def test_load_delta():
    g = build_grid(2, 1.0, 5)
    rhs = load_delta(g, g.center_index)
    assert rhs.sum() == 1.0
    assert rhs[g.interior_index[g.center_index]] == 1.0
    other = load_delta(g, g.node_at((0.5, 0.5)))
    assert float(rhs @ other) == 0.0
    with pytest.raises(SourcePlacementError):
        load_delta(g, 0)  # a corner node


def test_gradient_linear_reproduction():
    for d in (2, 3):
        g = build_grid(d, 1.0, 9)
        vals = g.node_coords[:, 0]
        grad = gradient_field(vals, g)
        assert np.abs(grad[:, 0] - 1.0).max() <= 1e-13
        assert np.abs(grad[:, 1:]).max() <= 1e-13


def test_gradient_constant_is_zero():
    g = build_grid(2, 1.0, 9)
    assert np.abs(gradient_field(np.full(g.n_nodes, 3.7), g)).max() == 0.0


def test_gradient_bilinear_monomial():
    # u = x1 x2 is bilinear: cell-center gradients are exact and the node
    # average reproduces (x2, x1) at interior nodes
    g = build_grid(2, 1.0, 17)
    x = g.node_coords
    grad = gradient_field(x[:, 0] * x[:, 1], g)
    interior = ~g.boundary_mask
    np.testing.assert_allclose(grad[interior, 0], x[interior, 1], atol=1e-12)
    np.testing.assert_allclose(grad[interior, 1], x[interior, 0], atol=1e-12)
    # boundary nodes average one-sided cells: O(h) there
    assert np.abs(grad[:, 0] - x[:, 1]).max() <= g.h
