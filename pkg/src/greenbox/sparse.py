"""Compressed-row sparse matrices, Krylov solvers, and a dense direct oracle.

Solvers are deliberately plain: Jacobi-scaled conjugate gradients for the
symmetric case, Jacobi-scaled BiCGStab otherwise.  All reductions use fixed
summation orders, so repeated runs with identical inputs are bitwise
reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ConfigError, ConvergenceError

DENSE_CAP = 4096


class SolveInfo(NamedTuple):
    iterations: int
    residual: float


@dataclass
class SparseSystem:
    """CSR matrix over the interior unknowns of a grid.

    Column indices are strictly increasing within each row; every diagonal
    entry is present and positive (coercivity of the discrete form).  The
    ``symmetric`` flag is set by the assembler from the coefficient family.
    """

    n_rows: int
    indptr: np.ndarray
    indices: np.ndarray
    data: np.ndarray
    symmetric: bool

    @property
    def nnz(self):
        return self.data.size

    def diagonal(self):
        diag = np.empty(self.n_rows)
        for i in range(self.n_rows):
            row = self.indices[self.indptr[i]:self.indptr[i + 1]]
            k = np.searchsorted(row, i)
            if k >= row.size or row[k] != i:
                raise ConfigError(f"missing diagonal entry in row {i}")
            diag[i] = self.data[self.indptr[i] + k]
        return diag

    def to_dense(self):
        dense = np.zeros((self.n_rows, self.n_rows))
        rows = np.repeat(np.arange(self.n_rows), np.diff(self.indptr))
        dense[rows, self.indices] = self.data
        return dense

    def transpose(self):
        """Explicit CSR transpose (stable counting sort over columns)."""
        order = np.argsort(self.indices, kind="stable")
        rows = np.repeat(np.arange(self.n_rows), np.diff(self.indptr))
        t_indices = rows[order]
        t_data = self.data[order]
        counts = np.bincount(self.indices, minlength=self.n_rows)
        t_indptr = np.zeros(self.n_rows + 1, dtype=self.indptr.dtype)
        np.cumsum(counts, out=t_indptr[1:])
        return SparseSystem(self.n_rows, t_indptr, t_indices, t_data,
                            self.symmetric)

    def validate(self):
        """Check the CSR invariants; raises ConfigError on violation."""
        if self.indptr[0] != 0 or self.indptr[-1] != self.nnz:
            raise ConfigError("bad indptr bounds")
        for i in range(self.n_rows):
            row = self.indices[self.indptr[i]:self.indptr[i + 1]]
            if row.size and np.any(np.diff(row) <= 0):
                raise ConfigError(f"column indices not strictly increasing in row {i}")
        if np.any(self.diagonal() <= 0.0):
            raise ConfigError("nonpositive diagonal entry")
        return True


def matvec(system, x):
    """y = K x with deterministic left-to-right summation within each row."""
    x = np.asarray(x)
    if x.shape != (system.n_rows,):
        raise ConfigError(
            f"matvec length mismatch: {x.shape} vs {system.n_rows}")
    prod = system.data * x[system.indices]
    # every row holds its diagonal, so no segment is empty
    return np.add.reduceat(prod, system.indptr[:-1])


def _check_true_residual(system, x, rhs, tol_abs):
    r = rhs - matvec(system, x)
    return r, float(np.linalg.norm(r))


def solve_spd(system, rhs, rel_tol=1e-10, max_iter=None):
    """Jacobi-preconditioned conjugate gradients for the symmetric case.

    Returns (u, SolveInfo) with ||K u - rhs||_2 <= rel_tol ||rhs||_2, the
    bound re-checked with one extra matvec before returning.  Raises
    ConvergenceError (carrying the residual) when max_iter is exhausted.
    """
    if not system.symmetric:
        raise ConfigError("solve_spd requires the symmetric flag")
    if not 0.0 < rel_tol < 1.0:
        raise ConfigError("rel_tol must lie in (0, 1)")
    if max_iter is None:
        max_iter = 20 * system.n_rows
    rhs = np.asarray(rhs, dtype=float)
    norm_b = float(np.linalg.norm(rhs))
    x = np.zeros(system.n_rows)
    if norm_b == 0.0:
        return x, SolveInfo(0, 0.0)
    tol_abs = rel_tol * norm_b
    inv_diag = 1.0 / system.diagonal()
    r = rhs.copy()
    z = inv_diag * r
    p = z.copy()
    rz = float(r @ z)
    iterations = 0
    while iterations < max_iter:
        iterations += 1
        ap = matvec(system, p)
        alpha = rz / float(p @ ap)
        x += alpha * p
        r -= alpha * ap
        if np.linalg.norm(r) <= tol_abs:
            r_true, res = _check_true_residual(system, x, rhs, tol_abs)
            if res <= tol_abs:
                return x, SolveInfo(iterations, res)
            # recursion residual drifted from the true one: restart
            r = r_true
            z = inv_diag * r
            p = z.copy()
            rz = float(r @ z)
            continue
        z = inv_diag * r
        rz_new = float(r @ z)
        p = z + (rz_new / rz) * p
        rz = rz_new
    res = float(np.linalg.norm(rhs - matvec(system, x)))
    raise ConvergenceError(
        f"CG did not reach {rel_tol:g} in {max_iter} iterations "
        f"(residual {res:g})", residual=res, iterations=max_iter)


def solve_general(system, rhs, rel_tol=1e-10, max_iter=None):
    """Jacobi-preconditioned BiCGStab; handles non-symmetric systems.

    Same contract as solve_spd.  On symmetric inputs the result agrees with
    solve_spd to the solver tolerance.
    """
    if not 0.0 < rel_tol < 1.0:
        raise ConfigError("rel_tol must lie in (0, 1)")
    if max_iter is None:
        max_iter = 20 * system.n_rows
    rhs = np.asarray(rhs, dtype=float)
    norm_b = float(np.linalg.norm(rhs))
    x = np.zeros(system.n_rows)
    if norm_b == 0.0:
        return x, SolveInfo(0, 0.0)
    tol_abs = rel_tol * norm_b
    inv_diag = 1.0 / system.diagonal()
    r = rhs.copy()
    r0 = r.copy()
    rho = alpha = omega = 1.0
    v = np.zeros_like(r)
    p = np.zeros_like(r)
    iterations = 0
    while iterations < max_iter:
        iterations += 1
        rho_new = float(r0 @ r)
        if rho_new == 0.0 or (omega == 0.0 and iterations > 1):
            # breakdown: restart the shadow residual from the current one
            r0 = r.copy()
            rho_new = float(r0 @ r)
            if rho_new == 0.0:
                break
            p = np.zeros_like(r)
            v = np.zeros_like(r)
            rho = alpha = omega = 1.0
        beta = (rho_new / rho) * (alpha / omega)
        rho = rho_new
        p = r + beta * (p - omega * v)
        ph = inv_diag * p
        v = matvec(system, ph)
        alpha = rho / float(r0 @ v)
        s = r - alpha * v
        if np.linalg.norm(s) <= tol_abs:
            x += alpha * ph
            r_true, res = _check_true_residual(system, x, rhs, tol_abs)
            if res <= tol_abs:
                return x, SolveInfo(iterations, res)
            r = r_true
            continue
        sh = inv_diag * s
        t = matvec(system, sh)
        tt = float(t @ t)
        if tt == 0.0:
            raise ConvergenceError("BiCGStab breakdown: t = 0",
                                   residual=float(np.linalg.norm(s)),
                                   iterations=iterations)
        omega = float(t @ s) / tt
        x += alpha * ph + omega * sh
        r = s - omega * t
        if np.linalg.norm(r) <= tol_abs:
            r_true, res = _check_true_residual(system, x, rhs, tol_abs)
            if res <= tol_abs:
                return x, SolveInfo(iterations, res)
            r = r_true
    res = float(np.linalg.norm(rhs - matvec(system, x)))
    raise ConvergenceError(
        f"BiCGStab did not reach {rel_tol:g} in {max_iter} iterations "
        f"(residual {res:g})", residual=res, iterations=iterations)


def solve(system, rhs, rel_tol=1e-10, max_iter=None):
    """Dispatch to CG or BiCGStab according to the symmetry flag."""
    if system.symmetric:
        return solve_spd(system, rhs, rel_tol, max_iter)
    return solve_general(system, rhs, rel_tol, max_iter)


def dense_solve(system, rhs):
    """Direct elimination with partial pivoting; the test oracle.

    Capped at 4096 unknowns.  A numerically singular matrix raises
    numpy.linalg.LinAlgError.
    """
    if system.n_rows > DENSE_CAP:
        raise ConfigError(
            f"dense oracle capped at {DENSE_CAP} unknowns, got {system.n_rows}")
    return np.linalg.solve(system.to_dense(), np.asarray(rhs, dtype=float))
