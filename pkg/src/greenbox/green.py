"""Discrete Green columns, domain growth, adjoints, and mixed derivatives."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import fields, mesh, sparse
from .errors import ConfigError, SourcePlacementError


@dataclass
class GreenColumn:
    """Nodal values of x -> G_h(x, y) for one source node y.

    ``values`` covers all grid nodes with zeros on the Dirichlet boundary.
    ``offset`` records the constant subtracted by normalize_2d (0 otherwise).
    """

    grid: mesh.BoxGrid
    field: fields.PeriodicField
    source: int
    values: np.ndarray
    offset: float = 0.0
    iterations: int = 0

    @property
    def source_coords(self):
        return self.grid.coords(self.source)

    def radii(self):
        return self.grid.distances_from(self.source)


def green_column(field, grid, y, *, system=None, rel_tol=1e-10, max_iter=None):
    """Solve K u = delta_y and extend by boundary zeros.

    With the nodal-delta load the solution approximates the continuum Green
    function directly (no h-dependent rescaling).  Pass a preassembled
    ``system`` to amortize assembly over many sources.
    """
    if system is None:
        system = mesh.assemble(field, grid)
    rhs = mesh.load_delta(grid, y)
    u, info = sparse.solve(system, rhs, rel_tol=rel_tol, max_iter=max_iter)
    return GreenColumn(grid=grid, field=field, source=y,
                       values=mesh.expand_interior(grid, u),
                       iterations=info.iterations)


def normalize_2d(col):
    """Fix the 2D additive constant by zero mean over the unit ball B_1(y).

    Subtracts the (volume-weighted, here uniform) node mean of the values
    over {|x - y| <= 1} and records it in ``offset``.  Idempotent up to
    round-off.
    """
    grid = col.grid
    if grid.dim != 2:
        raise ConfigError("normalize_2d applies to 2D grids only")
    yc = col.source_coords
    if np.any(np.abs(yc) + 1.0 > grid.half_width * (1 + 1e-12)):
        raise ConfigError("unit ball around the source is not inside the box")
    inside = col.radii() <= 1.0 + 1e-12
    m = float(col.values[inside].mean())
    return GreenColumn(grid=grid, field=col.field, source=col.source,
                       values=col.values - m, offset=col.offset + m,
                       iterations=col.iterations)


@dataclass
class GrowthReport:
    """Outcome of a nested-box growth experiment."""

    R_list: tuple
    columns: list
    monotone: bool
    worst_violation: float
    drifts: list = dc_field(default_factory=list)   # per consecutive pair
    sup_diffs: list = dc_field(default_factory=list)  # on the smallest box


def _restrict(values, grid_big, grid_small):
    """Values of a big-box column at the nodes of a nested smaller box."""
    shift = round((grid_big.half_width - grid_small.half_width) / grid_big.h)
    v = values.reshape(grid_big.shape)
    sl = tuple(slice(shift, shift + grid_small.n) for _ in range(grid_big.dim))
    return v[sl].reshape(-1)


def domain_growth(field, y_physical, R_list, h, *, rel_tol=1e-10):
    """Green columns on nested boxes [-R, R]^d sharing one spacing h.

    Checks the maximum-principle monotonicity G_{R'} >= G_R - 1e-10 * max at
    all shared nodes.  Also reports, per consecutive pair, the median value
    drift near the source (the 2D log(R'/R) effect) and, on the smallest
    box, the sup of consecutive differences (the d=3 convergence indicator).
    """
    R_list = tuple(float(R) for R in R_list)
    if any(b <= a for a, b in zip(R_list, R_list[1:])):
        raise ConfigError("R_list must be strictly increasing")
    y_physical = np.asarray(y_physical, dtype=float)
    grids = []
    for R in R_list:
        steps = 2.0 * R / h
        if abs(steps - round(steps)) > 1e-9 or round(steps) % 2 != 0:
            raise ConfigError(
                f"spacing {h} does not produce a nested odd grid for R = {R}")
        grids.append(mesh.build_grid(len(y_physical), R, int(round(steps)) + 1))
    cols = []
    for grid in grids:
        y = grid.node_at(y_physical)
        if grid.interior_index[y] < 0:
            raise SourcePlacementError("source on the boundary of one box")
        cols.append(green_column(field, grid, y, rel_tol=rel_tol))

    worst = 0.0
    drifts = []
    sup_diffs = []
    small = grids[0]
    y_small = small.node_at(y_physical)
    near = small.distances_from(y_small) <= small.half_width / 4.0 + 1e-12
    prev_on_small = cols[0].values
    for a, b in zip(range(len(grids) - 1), range(1, len(grids))):
        vb = _restrict(cols[b].values, grids[b], grids[a])
        diff = vb - cols[a].values
        worst = max(worst, float(-(diff.min())))
        vb_small = _restrict(cols[b].values, grids[b], small)
        drifts.append(float(np.median((vb_small - prev_on_small)[near])))
        sup_diffs.append(float(np.abs(vb_small - prev_on_small).max()))
        prev_on_small = vb_small
    scale = max(float(c.values.max()) for c in cols)
    monotone = worst <= 1e-10 * scale
    return GrowthReport(R_list=R_list, columns=cols, monotone=monotone,
                        worst_violation=worst, drifts=drifts,
                        sup_diffs=sup_diffs)


def adjoint_column(field, grid, x, *, system=None, rel_tol=1e-10):
    """Green column of the adjoint operator -div(A^T grad .) with source x.

    Because the assembler uses identical quadrature points, the discrete
    adjoint Green matrix is the exact transpose: G_A(x, y) = G_{A^T}(y, x)
    up to solver tolerance.
    """
    adj = fields.transpose_field(field)
    if system is None:
        system = mesh.assemble(adj, grid)
    return green_column(adj, grid, x, system=system, rel_tol=rel_tol)


def mixed_derivative(field, grid, y, *, system=None, rel_tol=1e-10):
    """Tensor field grad_x grad_y G via central differences in the source.

    Costs 2d extra solves (sources y +- h e_j).  Entry [n, i, j] holds
    d^2 G / dx_i dy_j at node n; meaningful for |x - y| >= 4h.
    """
    if system is None:
        system = mesh.assemble(field, grid)
    multi = np.array(grid.multi(y))
    d, h = grid.dim, grid.h
    out = np.zeros((grid.n_nodes, d, d))
    for j in range(d):
        cols = []
        for sgn in (+1, -1):
            shifted = multi.copy()
            shifted[j] += sgn
            idx = grid.index(shifted)
            if grid.interior_index[idx] < 0:
                raise SourcePlacementError(
                    f"source neighbor {tuple(shifted)} lies on the boundary")
            cols.append(green_column(field, grid, idx, system=system,
                                     rel_tol=rel_tol))
        dG_dyj = (cols[0].values - cols[1].values) / (2.0 * h)
        out[:, :, j] = mesh.gradient_field(dG_dyj, grid)
    return out
