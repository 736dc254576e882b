"""Two sanity anchors: the adjoint identity and the dense oracle.

Transposing the coefficient transposes the Green kernel: G_A(x, y) equals
G_{A^T}(y, x).  Because assembly uses one set of quadrature points, this
holds discretely to solver precision even for the non-symmetric family.
And at desk sizes every Krylov column can be checked against a dense LU
inverse, which is how the solver stack earns its trust.
"""

import numpy as np

import greenbox as gb

field = gb.make_field("nonsym_skew", 2)
grid = gb.build_grid(2, 1.0, 17)
system = gb.assemble(field, grid)
system_t = gb.assemble(gb.transpose_field(field), grid)

g_fwd = np.linalg.inv(system.to_dense())
g_adj = np.linalg.inv(system_t.to_dense())
print("dense Green matrices of L and L*:")
print(f"  max |G_A - G_At^T| = {np.abs(g_fwd - g_adj.T).max():.2e}")

y = grid.center_index
x = grid.node_at((0.25, -0.25))
col = gb.green_column(field, grid, y, system=system)
adj = gb.adjoint_column(field, grid, x, system=system_t)
print(f"  BiCGStab route: |G_A(x,y) - G_At(y,x)| = "
      f"{abs(col.values[x] - adj.values[y]):.2e}")

print("\nKrylov columns against the dense inverse:")
for fam in ("identity", "scalar_trig", "diag_aniso", "nonsym_skew"):
    f = gb.make_field(fam, 2)
    K = gb.assemble(f, grid)
    inv = np.linalg.inv(K.to_dense())
    worst = 0.0
    for i in range(K.n_rows):
        e = np.zeros(K.n_rows)
        e[i] = 1.0
        u, _ = gb.solve(K, e)
        worst = max(worst, np.abs(u - inv[:, i]).max())
    print(f"  {fam:12s} worst column error {worst:.2e}")
