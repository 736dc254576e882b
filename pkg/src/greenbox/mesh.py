"""Uniform box grids and Q1 finite-element assembly of -div(A grad u).

Grids are uniform tensor products on [-R, R]^d with homogeneous Dirichlet
boundary; the discrete operator is assembled from the weak form
K_ij = int (grad phi_i)^T A grad phi_j with multilinear nodal basis
functions and tensor 2-point Gauss quadrature, then restricted to interior
nodes by row/column elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import fields
from .errors import ConfigError, SourcePlacementError
from .sparse import SparseSystem

# 2-point Gauss nodes on the reference interval [0, 1]; exact for the
# bilinear basis with constant coefficients, O(h^2)-consistent for smooth A.
_GAUSS = (0.5 - 0.5 / np.sqrt(3.0), 0.5 + 0.5 / np.sqrt(3.0))


@dataclass(frozen=True)
class BoxGrid:
    """Uniform grid with n nodes per axis on the box [-R, R]^d.

    n is odd so that the origin is exactly a grid node; spacing is
    h = 2R/(n-1).  Nodes are indexed in C order (last axis fastest), and
    boundary nodes are the ones with any axis index in {0, n-1}.
    """

    dim: int
    half_width: float
    n: int

    @property
    def h(self):
        return 2.0 * self.half_width / (self.n - 1)

    @property
    def shape(self):
        return (self.n,) * self.dim

    @property
    def n_nodes(self):
        return self.n**self.dim

    @property
    def n_interior(self):
        return (self.n - 2) ** self.dim

    @cached_property
    def axis(self):
        """Node coordinates along one axis; the center entry is exactly 0."""
        c = (self.n - 1) // 2
        return (np.arange(self.n) - c) * self.h

    @cached_property
    def node_coords(self):
        """(n_nodes, d) array of node coordinates in C order."""
        grids = np.meshgrid(*([self.axis] * self.dim), indexing="ij")
        return np.stack([g.ravel() for g in grids], axis=-1)

    @cached_property
    def boundary_mask(self):
        mask = np.zeros(self.shape, dtype=bool)
        for k in range(self.dim):
            sl = [slice(None)] * self.dim
            sl[k] = 0
            mask[tuple(sl)] = True
            sl[k] = self.n - 1
            mask[tuple(sl)] = True
        return mask.ravel()

    @cached_property
    def interior_ids(self):
        return np.flatnonzero(~self.boundary_mask)

    @cached_property
    def interior_index(self):
        """Full node index -> interior index, or -1 on the boundary."""
        out = np.full(self.n_nodes, -1, dtype=np.int64)
        out[self.interior_ids] = np.arange(self.interior_ids.size)
        return out

    @property
    def center_index(self):
        c = (self.n - 1) // 2
        return int(np.ravel_multi_index((c,) * self.dim, self.shape))

    def index(self, multi):
        return int(np.ravel_multi_index(tuple(multi), self.shape))

    def multi(self, index):
        return np.unravel_index(index, self.shape)

    def coords(self, index):
        return self.node_coords[index]

    def node_at(self, point, tol=1e-9):
        """Full index of the node at physical coordinates ``point``."""
        point = np.asarray(point, dtype=float)
        rel = (point + self.half_width * np.ones(self.dim)) / self.h
        multi = np.rint(rel).astype(int)
        if np.any(np.abs(rel - multi) > tol) or np.any(multi < 0) or np.any(multi >= self.n):
            raise ConfigError(f"point {point} is not a grid node")
        return self.index(multi)

    def distances_from(self, index):
        """Euclidean distance of every node from the node ``index``."""
        return np.linalg.norm(self.node_coords - self.node_coords[index], axis=1)


def build_grid(d, R, n):
    """Validated BoxGrid constructor: n odd, n >= 5, R > 0."""
    if d not in (2, 3):
        raise ConfigError(f"dimension must be 2 or 3, got {d}")
    if R <= 0:
        raise ConfigError("half-width R must be positive")
    if n < 5 or n % 2 == 0:
        raise ConfigError(f"nodes per axis must be odd and >= 5, got {n}")
    return BoxGrid(d, float(R), int(n))


def _corner_offsets(d):
    """(2^d, d) array of local corner multi-offsets in C order."""
    return np.stack(np.meshgrid(*([np.array([0, 1])] * d), indexing="ij"),
                    axis=-1).reshape(-1, d)


def _reference_rules(d):
    """Tensor Gauss points and basis gradients on the reference cell [0,1]^d.

    Returns (xi, grad) with xi of shape (nq, d) and grad of shape
    (nq, d, 2^d): grad[q, k, m] = d phi_m / d xi_k at point q.
    """
    corners = _corner_offsets(d)
    xi = np.stack(np.meshgrid(*([np.array(_GAUSS)] * d), indexing="ij"),
                  axis=-1).reshape(-1, d)
    nq, m = xi.shape[0], corners.shape[0]
    grad = np.empty((nq, d, m))
    for j in range(m):
        # phi_j(xi) = prod_k (xi_k if corner else 1 - xi_k)
        factors = np.where(corners[j], xi, 1.0 - xi)  # (nq, d)
        for k in range(d):
            others = np.prod(np.delete(factors, k, axis=1), axis=1)
            grad[:, k, j] = (1.0 if corners[j, k] else -1.0) * others
    return xi, grad


def _assemble_axes(matrix_fn, axes, h, symmetric, chunk=1 << 16):
    """Assemble the interior-node stiffness matrix on a uniform tensor grid.

    ``axes`` is a list of per-axis node coordinate arrays with common
    spacing ``h``; ``matrix_fn`` maps (M, d) points to (M, d, d) coefficient
    matrices.  Entries are accumulated in banded (node, stencil-offset)
    storage in a fixed order, so the output is independent of any element
    visit order by construction.
    """
    d = len(axes)
    shape = tuple(len(a) for a in axes)
    ishape = tuple(s - 2 for s in shape)
    n_int = int(np.prod(ishape))
    corners = _corner_offsets(d)
    m = corners.shape[0]
    xi, gref = _reference_rules(d)
    nq = xi.shape[0]
    # pair (i, j) of local corners -> stencil offset id in {0..3^d-1}
    offsets3 = np.stack(np.meshgrid(*([np.array([-1, 0, 1])] * d), indexing="ij"),
                        axis=-1).reshape(-1, d)
    off_id = {tuple(o): k for k, o in enumerate(offsets3)}
    pair_off = np.array([[off_id[tuple(corners[j] - corners[i])]
                          for j in range(m)] for i in range(m)])

    # quadrature contraction tensor: P[(q,k,l), (i,j)]
    pairs = np.einsum("qki,qlj->qklij", gref, gref).reshape(nq * d * d, m * m)
    scale = h ** (d - 2) / (2**d)

    istrides = np.array([int(np.prod(ishape[k + 1:])) for k in range(d)])
    banded = np.zeros((n_int, 3**d))

    eshape = tuple(s - 1 for s in shape)
    n_el = int(np.prod(eshape))
    lowers = [a[:-1] for a in axes]
    for start in range(0, n_el, chunk):
        ids = np.arange(start, min(start + chunk, n_el))
        emulti = np.stack(np.unravel_index(ids, eshape), axis=-1)  # (ne, d)
        corner_xy = np.stack([lowers[k][emulti[:, k]] for k in range(d)], axis=-1)
        qpts = corner_xy[:, None, :] + h * xi[None, :, :]  # (ne, nq, d)
        amat = matrix_fn(qpts.reshape(-1, d)).reshape(len(ids), nq * d * d)
        elem = scale * (amat @ pairs)  # (ne, m*m)
        node_multi = emulti[:, None, :] + corners[None, :, :]  # (ne, m, d)
        interior = np.all((node_multi >= 1) & (node_multi <= np.array(shape) - 2),
                          axis=-1)  # (ne, m)
        int_idx = (node_multi - 1) @ istrides  # valid only where interior
        for i in range(m):
            rows_ok = interior[:, i]
            for j in range(m):
                keep = rows_ok & interior[:, j]
                if not keep.any():
                    continue
                # rows are distinct within a fixed local corner, so plain
                # fancy-index accumulation is exact and order-free
                banded[int_idx[keep, i], pair_off[i, j]] += elem[keep, i * m + j]

    # banded -> CSR; stencil offsets sorted by their linear column shift
    col_shift = offsets3 @ istrides
    order = np.argsort(col_shift, kind="stable")
    offsets3 = offsets3[order]
    col_shift = col_shift[order]
    banded = banded[:, order]

    imulti = np.stack(np.unravel_index(np.arange(n_int), ishape), axis=-1)
    valid = np.ones((n_int, 3**d), dtype=bool)
    for k in range(d):
        for o, sgn in ((0, -1), (ishape[k] - 1, 1)):
            edge = imulti[:, k] == o
            hit = offsets3[:, k] == sgn
            valid[np.ix_(edge, hit)] = False
    counts = valid.sum(axis=1)
    indptr = np.zeros(n_int + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    cols = np.arange(n_int, dtype=np.int64)[:, None] + col_shift[None, :]
    indices = cols[valid]
    data = banded[valid]
    return SparseSystem(n_rows=n_int, indptr=indptr, indices=indices,
                        data=data, symmetric=symmetric)


def assemble(field, grid):
    """Stiffness matrix of -div(A grad .) over the grid's interior nodes."""
    if field.dim != grid.dim:
        raise ConfigError(
            f"field dimension {field.dim} does not match grid dimension {grid.dim}")
    return _assemble_axes(lambda pts: fields.evaluate(field, pts),
                          [grid.axis] * grid.dim, grid.h,
                          symmetric=fields.is_symmetric(field))


def load_delta(grid, y):
    """Unit load at the interior node ``y`` (full node index).

    Against the nodal basis, int phi_i delta_y = phi_i(y) = delta_iy, so the
    discrete right-hand side is exactly a unit coordinate vector over the
    interior unknowns.
    """
    iy = grid.interior_index[y]
    if iy < 0:
        raise SourcePlacementError(
            f"source node {y} lies on the Dirichlet boundary")
    rhs = np.zeros(grid.n_interior)
    rhs[iy] = 1.0
    return rhs


def expand_interior(grid, interior_values):
    """Embed an interior-node vector into a full-node vector (boundary zeros)."""
    full = np.zeros(grid.n_nodes)
    full[grid.interior_ids] = interior_values
    return full


def gradient_field(values, grid):
    """Nodal gradients: Q1 element-center gradients, volume-averaged to nodes.

    ``values`` lives on all nodes (boundary included).  Exact for affine
    data; second-order accurate on smooth fields away from singularities.
    Returns an (n_nodes, d) array.
    """
    return gradient_on_axes(values, [grid.axis] * grid.dim, grid.h)


def gradient_on_axes(values, axes, h):
    d = len(axes)
    shape = tuple(len(a) for a in axes)
    v = np.asarray(values, dtype=float).reshape(shape)
    cell_grad = []
    for k in range(d):
        diff = (np.diff(v, axis=k)) / h
        # average the axis-k differences over the remaining corner pairs
        for j in range(d):
            if j == k:
                continue
            lo = [slice(None)] * d
            hi = [slice(None)] * d
            lo[j] = slice(0, -1)
            hi[j] = slice(1, None)
            diff = 0.5 * (diff[tuple(lo)] + diff[tuple(hi)])
        cell_grad.append(diff)  # shape: one less node per axis
    out = np.zeros(shape + (d,))
    count = np.zeros(shape)
    cells = np.ones(tuple(s - 1 for s in shape))
    for corner in _corner_offsets(d):
        sl = tuple(slice(c, c + s - 1) for c, s in zip(corner, shape))
        count[sl] += cells
        for k in range(d):
            out[sl + (k,)] += cell_grad[k]
    out /= count[..., None]
    return out.reshape(-1, d)
