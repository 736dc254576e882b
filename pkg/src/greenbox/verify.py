"""Experiment runners with pinned expectations, one group per headline check.

Each runner returns a list of Check records; the CLI presets map onto these
runners with their default arguments, so ``greenbox verify --preset <name>``
reproduces the corresponding acceptance run in one command.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import analysis, fields, green, lift, mesh, sparse
from .errors import ConfigError

BUILTIN_FAMILIES = ("identity", "scalar_trig", "diag_aniso", "nonsym_skew")
DECAY_FAMILIES = ("identity", "scalar_trig")


@dataclass
class Check:
    """One verification record: what was measured against what."""

    name: str
    anchor: str
    passed: bool
    measured: dict
    expected: dict
    details: str = ""


def _within(value, target, tol):
    return abs(value - target) <= tol


def _profile(values, grid, y_coords, window, count=9, eta=analysis.DEFAULT_ETA):
    spec = analysis.make_annuli(grid, y_coords, window, count=count, eta=eta)
    return spec, analysis.annulus_average(values, grid, spec)


# ---------------------------------------------------------------------------
# decay suite, d = 3: |G| ~ r^{2-d}, |grad G| ~ r^{1-d}, interior ratios
# ---------------------------------------------------------------------------

def checks_decay3d(families=DECAY_FAMILIES, R=2.0, n=65, rel_tol=1e-10,
                   expected_exponent=-1.0, exponent_tol=0.1,
                   radii_count=9, eta=analysis.DEFAULT_ETA):
    checks = []
    for fam in families:
        field = fields.make_field(fam, 3)
        grid = mesh.build_grid(3, R, n)
        system = mesh.assemble(field, grid)
        col = green.green_column(field, grid, grid.center_index,
                                 system=system, rel_tol=rel_tol)
        window = analysis.fit_window(grid)
        spec, stats = _profile(col.values, grid, col.source_coords, window,
                               count=radii_count, eta=eta)
        rep = analysis.fit_power_decay(spec.radii, stats, window, "G")
        checks.append(Check(
            name=f"decay3d.G.{fam}",
            anchor="|G(x,y)| <= C |x-y|^(2-d)",
            passed=_within(rep.fitted_exponent, expected_exponent, exponent_tol),
            measured={"exponent": rep.fitted_exponent,
                      "constant": rep.fitted_constant,
                      "rms_log_residual": rep.rms_log_residual,
                      "radii": list(rep.radii),
                      "annulus_stats": list(rep.annulus_stats)},
            expected={"exponent": expected_exponent, "tol": exponent_tol},
            details=f"window {window}, R={R}, n={n}"))

        # companion fit acknowledging the finite-box offset: on a Dirichlet
        # box the shell average is C/r minus a constant (the smooth corrector
        # equals its value at the source by the mean value property), so fit
        # (C, c) linearly with the exponent pinned and re-fit with the offset
        # restored
        radii = np.asarray(spec.radii)
        design = np.stack([radii**(2 - 3), -np.ones_like(radii)], axis=1)
        coef, *_ = np.linalg.lstsq(design, stats, rcond=None)
        c_amp, c_off = float(coef[0]), float(coef[1])
        model = design @ coef
        rel_rms = float(np.sqrt(np.mean((stats - model) ** 2)) / stats.mean())
        rep_corr = analysis.fit_power_decay(radii, stats + c_off, window, "G")
        meas = {"amplitude": c_amp, "offset": c_off, "rel_rms": rel_rms,
                "corrected_exponent": rep_corr.fitted_exponent}
        ok = rel_rms <= 0.02 and _within(rep_corr.fitted_exponent, -1.0, 0.05)
        if fam == "identity":
            free_amp = 1.0 / (4.0 * np.pi)
            meas["amplitude_vs_free_space"] = c_amp / free_amp - 1.0
            ok = ok and abs(c_amp / free_amp - 1.0) <= 0.03
        checks.append(Check(
            name=f"decay3d.G_offset_corrected.{fam}",
            anchor="G_R = C r^(2-d) - const(R) on the box, C domain-independent",
            passed=ok,
            measured=meas,
            expected={"rel_rms": 0.02, "corrected_exponent": -1.0, "tol": 0.05},
            details="two-parameter fit with the exponent pinned at 2-d"))

        gmag = np.linalg.norm(mesh.gradient_field(col.values, grid), axis=1)
        gspec, gstats = _profile(gmag, grid, col.source_coords, window,
                                 count=radii_count, eta=eta)
        grep = analysis.fit_power_decay(gspec.radii, gstats, window, "grad_x")
        checks.append(Check(
            name=f"decay3d.grad.{fam}",
            anchor="|grad_x G(x,y)| <= C |x-y|^(1-d)",
            passed=_within(grep.fitted_exponent, -2.0, 0.15),
            measured={"exponent": grep.fitted_exponent,
                      "constant": grep.fitted_constant,
                      "radii": list(grep.radii),
                      "annulus_stats": list(grep.annulus_stats)},
            expected={"exponent": -2.0, "tol": 0.15}))

        # interior gradient-over-value ratio at dyadic radii 8h, 16h; the
        # 16h ball only fits inside the box with its center on the diagonal
        h = grid.h
        x_axis = grid.node_at(col.source_coords + np.array([12 * h, 0, 0]))
        x_diag = grid.node_at(col.source_coords + 14 * h * np.ones(3))
        frac_diag = 16.0 / (14.0 * np.sqrt(3.0))
        ratio = analysis.lipschitz_ratio_check(col, [x_axis])
        ratio_d = analysis.lipschitz_ratio_check(col, [x_diag],
                                                 r_fractions=(frac_diag,))
        ratios = [ratio.records[0][2], ratio_d.records[0][2]]
        variation = max(ratios) / min(ratios)
        meas = {"ratios": ratios, "variation": variation}
        ok = variation < 4.0
        if fam == "identity":
            rho, r = 12 * h, 8 * h
            exact = r * (rho - r) / (rho - r / 2) ** 2
            rel = ratios[0] / exact - 1.0
            meas["analytic_rel_err"] = rel
            ok = ok and abs(rel) <= 0.15
        checks.append(Check(
            name=f"decay3d.ratio.{fam}",
            anchor="r sup_{B_{r/2}} |grad G| <= C sup_{B_r} |G|",
            passed=ok,
            measured=meas,
            expected={"variation_factor": 4.0,
                      "analytic_rel_tol": 0.15 if fam == "identity" else None}))
    return checks


# ---------------------------------------------------------------------------
# decay suite, d = 2: log bound, gradient, mixed second derivatives
# ---------------------------------------------------------------------------

def checks_log2d(families=DECAY_FAMILIES, R=4.0, n=129, rel_tol=1e-10,
                 radii_count=9, eta=analysis.DEFAULT_ETA):
    checks = []
    slope_ref = 1.0 / (2.0 * np.pi)
    for fam in families:
        field = fields.make_field(fam, 2)
        grid = mesh.build_grid(2, R, n)
        system = mesh.assemble(field, grid)
        col = green.green_column(field, grid, grid.center_index,
                                 system=system, rel_tol=rel_tol)
        ncol = green.normalize_2d(col)
        window = analysis.fit_window(grid, "log")
        spec, stats = _profile(ncol.values, grid, ncol.source_coords, window,
                               count=radii_count, eta=eta)
        rep = analysis.fit_log_growth(spec.radii, stats, window)
        rel_res = rep.rms_residual / np.mean(stats)
        ok = np.isfinite(rep.slope) and rel_res <= 0.10
        meas = {"slope": rep.slope, "residual_over_mean": float(rel_res),
                "offset": ncol.offset, "radii": list(rep.radii),
                "annulus_stats": list(rep.annulus_stats)}
        if fam == "identity":
            meas["slope_rel_err"] = rep.slope / slope_ref - 1.0
            ok = ok and abs(rep.slope / slope_ref - 1.0) <= 0.15
        checks.append(Check(
            name=f"log2d.G.{fam}",
            anchor="|G(x,y)| <= C (1 + |log|x-y||)",
            passed=bool(ok),
            measured=meas,
            expected={"residual_over_mean": 0.10,
                      "slope": slope_ref if fam == "identity" else "finite",
                      "slope_rel_tol": 0.15 if fam == "identity" else None},
            details=f"window {window} (outer cut below the normalization "
                    f"zero crossing at exp(-1/2))"))

        window_p = analysis.fit_window(grid)
        gmag = np.linalg.norm(mesh.gradient_field(col.values, grid), axis=1)
        gspec, gstats = _profile(gmag, grid, col.source_coords, window_p,
                                 count=radii_count, eta=eta)
        grep = analysis.fit_power_decay(gspec.radii, gstats, window_p, "grad_x")
        checks.append(Check(
            name=f"log2d.grad.{fam}",
            anchor="|grad_x G(x,y)| <= C |x-y|^(1-d)",
            passed=_within(grep.fitted_exponent, -1.0, 0.15),
            measured={"exponent": grep.fitted_exponent,
                      "constant": grep.fitted_constant,
                      "radii": list(grep.radii),
                      "annulus_stats": list(grep.annulus_stats)},
            expected={"exponent": -1.0, "tol": 0.15}))

        tensor = green.mixed_derivative(field, grid, grid.center_index,
                                        system=system, rel_tol=rel_tol)
        tmag = np.sqrt((tensor**2).sum(axis=(1, 2)))
        tspec, tstats = _profile(tmag, grid, col.source_coords, window_p,
                                 count=radii_count, eta=eta)
        trep = analysis.fit_power_decay(tspec.radii, tstats, window_p, "mixed")
        checks.append(Check(
            name=f"log2d.mixed.{fam}",
            anchor="|grad_x grad_y G(x,y)| <= C |x-y|^(-d)",
            passed=_within(trep.fitted_exponent, -2.0, 0.2),
            measured={"exponent": trep.fitted_exponent,
                      "constant": trep.fitted_constant,
                      "radii": list(trep.radii),
                      "annulus_stats": list(trep.annulus_stats)},
            expected={"exponent": -2.0, "tol": 0.2}))

        h = grid.h
        x_axis = grid.node_at(col.source_coords + np.array([12 * h, 0]))
        x_diag = grid.node_at(col.source_coords + 14 * h * np.ones(2))
        ratio = analysis.lipschitz_ratio_check(col, [x_axis])
        ratio_d = analysis.lipschitz_ratio_check(
            col, [x_diag], r_fractions=(16.0 / (14.0 * np.sqrt(2.0)),))
        ratios = [ratio.records[0][2], ratio_d.records[0][2]]
        variation = max(ratios) / min(ratios)
        checks.append(Check(
            name=f"log2d.ratio.{fam}",
            anchor="r sup_{B_{r/2}} |grad G| <= C sup_{B_r} |G|",
            passed=variation < 4.0,
            measured={"ratios": ratios, "variation": variation},
            expected={"variation_factor": 4.0}))
    return checks


# ---------------------------------------------------------------------------
# maximum principle: monotone growth in R, 2D additive drift
# ---------------------------------------------------------------------------

def checks_monotone(families=BUILTIN_FAMILIES, R_list=(1.0, 2.0, 4.0),
                    h2=1.0 / 16.0, h3=1.0 / 8.0, rel_tol=1e-10):
    checks = []
    drift_ref = np.log(2.0) / (2.0 * np.pi)
    for fam in families:
        for d, h in ((2, h2), (3, h3)):
            field = fields.make_field(fam, d)
            rep = green.domain_growth(field, (0.0,) * d, R_list, h,
                                      rel_tol=rel_tol)
            scale = max(float(c.values.max()) for c in rep.columns)
            checks.append(Check(
                name=f"monotone.{fam}.d{d}",
                anchor="G_R' >= G_R for R' > R (maximum principle)",
                passed=rep.monotone,
                measured={"worst_violation": rep.worst_violation},
                expected={"bound": 1e-10 * scale}))
            if d == 2 and fam == "identity":
                errs = [abs(dr / drift_ref - 1.0) for dr in rep.drifts]
                checks.append(Check(
                    name="monotone.drift2d.identity",
                    anchor="G_{R'} - G_R -> (1/2pi) log(R'/R) near the source",
                    passed=max(errs) <= 0.10,
                    measured={"drifts": rep.drifts, "rel_errors": errs},
                    expected={"drift": drift_ref, "tol": 0.10}))
            if d == 3 and fam == "identity":
                checks.append(Check(
                    name="monotone.converge3d.identity",
                    anchor="G_R converges as R grows (d >= 3)",
                    passed=rep.sup_diffs[-1] < rep.sup_diffs[0],
                    measured={"sup_diffs_on_smallest_box": rep.sup_diffs},
                    expected={"decreasing": True}))
    return checks


# ---------------------------------------------------------------------------
# adjoint identity via the dense oracle
# ---------------------------------------------------------------------------

def checks_adjoint(n=17, R=1.0, rel_tol=1e-10):
    checks = []
    field = fields.make_field("nonsym_skew", 2)
    grid = mesh.build_grid(2, R, n)
    system = mesh.assemble(field, grid)
    system_t = mesh.assemble(fields.transpose_field(field), grid)
    g_mat = np.linalg.inv(system.to_dense())
    g_mat_t = np.linalg.inv(system_t.to_dense())
    dense_err = float(np.abs(g_mat - g_mat_t.T).max())
    scale = float(np.abs(g_mat).max())
    checks.append(Check(
        name="adjoint.dense.nonsym_skew",
        anchor="G_A(x,y) = G_{A^T}(y,x)",
        passed=dense_err <= 1e-8 * scale,
        measured={"max_abs_err": dense_err, "scale": scale},
        expected={"bound": 1e-8 * scale},
        details="full dense Green matrices"))

    h = grid.h
    y = grid.center_index
    xs = [grid.node_at((0.25, -0.25)), grid.node_at((4 * h, 2 * h)),
          grid.node_at((-0.375, 0.125))]
    col = green.green_column(field, grid, y, system=system, rel_tol=rel_tol)
    worst = 0.0
    for x in xs:
        adj = green.adjoint_column(field, grid, x, system=system_t,
                                   rel_tol=rel_tol)
        worst = max(worst, abs(col.values[x] - adj.values[y]))
    checks.append(Check(
        name="adjoint.iterative.nonsym_skew",
        anchor="G_A(x,y) = G_{A^T}(y,x)",
        passed=worst <= 1e-8 * float(col.values.max()),
        measured={"max_abs_err": worst},
        expected={"bound": 1e-8 * float(col.values.max())},
        details="BiCGStab columns of L and L*"))
    return checks


# ---------------------------------------------------------------------------
# weak-Lorentz norms and the embedding sandwich
# ---------------------------------------------------------------------------

def _random_fields(rng, count):
    for _ in range(count):
        kind = rng.integers(0, 3)
        size = int(rng.integers(20, 200))
        if kind == 0:
            yield rng.normal(size=size)
        elif kind == 1:
            yield rng.lognormal(sigma=2.0, size=size)
        else:
            v = np.zeros(size)
            k = max(1, size // 10)
            v[rng.choice(size, size=k, replace=False)] = rng.normal(size=k) * 100
            yield v


def checks_lorentz(n_random=1000, seed=0, disk_n=257, p=2.0, beta=1.0):
    checks = []
    # exact constant-field case: the inverted prefactor asserts 2 <= 1
    ones = np.ones(100)
    rep = analysis.lorentz_sandwich_check(ones, 1.0 / ones.size, p=2.0, beta=1.0)
    exact_ok = (abs(rep.weak - 1.0) < 1e-12 and abs(rep.lp - 1.0) < 1e-12
                and abs(rep.lp_minus_beta - 1.0) < 1e-12
                and abs(rep.c_corrected - 0.5) < 1e-12
                and abs(rep.c_inverted - 2.0) < 1e-12
                and rep.lower_ok and rep.upper_ok and not rep.inverted_lower_ok)
    checks.append(Check(
        name="lorentz.constant_counterexample",
        anchor="C(p,b) ||f||_{p-b} <= ||f||_{p,inf}: prefactor must be (b/p)",
        passed=exact_ok,
        measured={"weak": rep.weak, "lp": rep.lp, "lpb": rep.lp_minus_beta,
                  "c_corrected": rep.c_corrected, "c_inverted": rep.c_inverted,
                  "inverted_holds": rep.inverted_lower_ok},
        expected={"c_corrected": 0.5, "c_inverted": 2.0,
                  "inverted_holds": False},
        details="f = 1 on unit measure at p = 2, beta = 1"))

    rng = np.random.default_rng(seed)
    lower_fail = upper_fail = 0
    inverted_fail = 0
    for v in _random_fields(rng, n_random):
        r = analysis.lorentz_sandwich_check(v, 1.0 / v.size, p=p, beta=beta)
        lower_fail += not r.lower_ok
        upper_fail += not r.upper_ok
        inverted_fail += not r.inverted_lower_ok
    checks.append(Check(
        name="lorentz.sandwich_random",
        anchor="C(p,b) ||f||_{p-b} <= ||f||_{p,inf} <= ||f||_p",
        passed=(lower_fail == 0 and upper_fail == 0),
        measured={"n_fields": n_random, "lower_failures": lower_fail,
                  "upper_failures": upper_fail,
                  "inverted_prefactor_failures": inverted_fail},
        expected={"lower_failures": 0, "upper_failures": 0}))

    # |x|^{-1} on the unit disk: borderline-L^2 singularity with weak norm
    # sqrt(pi); nodes inside 4h are excluded (the lattice order statistics
    # there are delta-scale artifacts, exactly like the radial fit window)
    grid = mesh.build_grid(2, 1.0, disk_n)
    h = grid.h
    r = np.linalg.norm(grid.node_coords, axis=1)
    mask = (r <= 1.0) & (r >= 4 * h)
    vals = 1.0 / r[mask]
    norm = analysis.weak_lorentz_norm(vals, h * h, p=2.0)
    ref = float(np.sqrt(np.pi))
    checks.append(Check(
        name="lorentz.disk_inverse_radius",
        anchor="|| |x|^{-1} ||_{L^{2,inf}(disk)} = sqrt(pi)",
        passed=abs(norm / ref - 1.0) <= 0.02,
        measured={"norm": norm, "rel_err": norm / ref - 1.0},
        expected={"norm": ref, "tol": 0.02},
        details=f"n = {disk_n}, near-field exclusion 4h"))

    rep2 = analysis.lorentz_sandwich_check(vals, h * h, p=2.0, beta=0.5)
    checks.append(Check(
        name="lorentz.disk_lower_sandwich",
        anchor="C(p,b) ||f||_{p-b} <= ||f||_{p,inf} at p = 2, b = 0.5",
        passed=rep2.lower_ok and rep2.upper_ok,
        measured={"weak": rep2.weak, "lpb": rep2.lp_minus_beta,
                  "c_corrected": rep2.c_corrected},
        expected={"lower_ok": True, "upper_ok": True}))
    return checks


# ---------------------------------------------------------------------------
# uniform-in-R bounds across nested boxes and source positions
# ---------------------------------------------------------------------------

def checks_uniform(families=DECAY_FAMILIES, R_list=(1.0, 2.0, 4.0), h=1.0 / 32.0,
                   y_list=((0.0, 0.0), (0.25, 0.0)), rel_tol=1e-10,
                   max_spread=1.25, include_mixed=True):
    checks = []
    for fam in families:
        field = fields.make_field(fam, 2)
        rep = analysis.uniform_bound_check(field, y_list, R_list, h,
                                           include_mixed=include_mixed,
                                           rel_tol=rel_tol,
                                           max_spread=max_spread)
        checks.append(Check(
            name=f"uniform.{fam}",
            anchor="decay constants and ||grad G_R||_{d/(d-1),inf} "
                   "uniform in R and y",
            passed=rep.passed,
            measured={"spreads": rep.spreads,
                      "records": {k: {str(kk): vv for kk, vv in v.items()}
                                  for k, v in rep.records.items()}},
            expected={"max_spread": max_spread}))
    return checks


# ---------------------------------------------------------------------------
# dimension lifting
# ---------------------------------------------------------------------------

def _simpson(f, a, b, n):
    if n % 2:
        n += 1
    x = np.linspace(a, b, n + 1)
    w = np.ones(n + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return float((b - a) / (3.0 * n) * (w @ f(x)))


def checks_lift(R=1.0, n_compare=33, n_exponent=65, kappa_factor=4.0,
                rel_tol=1e-10, tol_identity=0.15, tol_trig=0.20):
    checks = []
    kappa = kappa_factor * R

    # arctan kernel identity, quadrature against the closed form
    quad = _simpson(lambda t: 1.0 / (1.0 + t**2), -100.0, 100.0, 1_000_000)
    closed = float(lift.arctan_kernel(1.0, 100.0))
    limit_err = float(np.pi - lift.arctan_kernel(1.0, 1e13))
    checks.append(Check(
        name="lift.arctan_kernel",
        anchor="int_{-k}^{k} dt/(r^2+t^2) = (2/r) atan(k/r) -> pi/r",
        passed=abs(quad - closed) <= 1e-12 and abs(limit_err) <= 1e-12,
        measured={"quadrature": quad, "closed_form": closed,
                  "limit_error_at_k_1e13": limit_err},
        expected={"quad_tol": 1e-12, "limit_tol": 1e-12}))

    for fam, tol in (("identity", tol_identity), ("scalar_trig", tol_trig)):
        field = fields.make_field(fam, 2)
        grid = mesh.build_grid(2, R, n_compare)
        slab = lift.build_slab(grid, kappa)
        rep = lift.compare_lift(field, grid, slab, grid.center_index, kappa,
                                rel_tol=rel_tol)
        checks.append(Check(
            name=f"lift.gradient_match.{fam}",
            anchor="grad_x G_kappa = grad_x G in the kappa -> inf limit",
            passed=(rep.rel_discrepancy_l2 <= tol and rep.positive
                    and rep.monotone_in_kappa),
            measured={"rel_l2": rep.rel_discrepancy_l2,
                      "rel_max": rep.rel_discrepancy_max,
                      "positive": rep.positive,
                      "monotone_in_kappa": rep.monotone_in_kappa},
            expected={"rel_l2": tol},
            details=f"kappa = {kappa}, base n = {n_compare}"))

    field = fields.make_field("identity", 2)
    grid = mesh.build_grid(2, R, n_exponent)
    slab = lift.build_slab(grid, kappa)
    rep = lift.compare_lift(field, grid, slab, grid.center_index, kappa,
                            rel_tol=rel_tol)
    checks.append(Check(
        name="lift.grad_exponent.identity",
        anchor="|grad_x G_kappa(x,y)| <= C pi / |x-y|",
        passed=(_within(rep.decay.fitted_exponent, -1.0, 0.2)
                and rep.kappa_stability < 1.25),
        measured={"exponent": rep.decay.fitted_exponent,
                  "constant": rep.decay.fitted_constant,
                  "kappa_stability": rep.kappa_stability},
        expected={"exponent": -1.0, "tol": 0.2, "stability": 1.25},
        details=f"base n = {n_exponent} (window needs 4h < R/4)"))
    return checks


# ---------------------------------------------------------------------------
# oracle equivalence: iterative Green matrices against dense inverses
# ---------------------------------------------------------------------------

def checks_oracle(families=BUILTIN_FAMILIES, rel_tol=1e-10):
    checks = []
    for d, n in ((2, 17), (3, 9)):
        for fam in families:
            field = fields.make_field(fam, d)
            grid = mesh.build_grid(d, 1.0, n)
            system = mesh.assemble(field, grid)
            inverse = np.linalg.inv(system.to_dense())
            worst = 0.0
            for i in range(system.n_rows):
                e = np.zeros(system.n_rows)
                e[i] = 1.0
                u, _ = sparse.solve(system, e, rel_tol=rel_tol)
                worst = max(worst, float(np.abs(u - inverse[:, i]).max()))
            checks.append(Check(
                name=f"oracle.{fam}.d{d}",
                anchor="iterative Green columns match the dense inverse",
                passed=worst <= 1e-8,
                measured={"max_abs_err": worst},
                expected={"bound": 1e-8},
                details=f"n = {n}, all {system.n_rows} columns"))
    return checks


# ---------------------------------------------------------------------------
# preset registry
# ---------------------------------------------------------------------------

def _checks_selftest_fail():
    """Deliberately wrong expectation; exercises the failure exit path."""
    field = fields.make_field("identity", 2)
    grid = mesh.build_grid(2, 2.0, 65)
    col = green.normalize_2d(green.green_column(field, grid, grid.center_index))
    window = analysis.fit_window(grid, "log")
    spec, stats = _profile(col.values, grid, col.source_coords, window)
    rep = analysis.fit_log_growth(spec.radii, stats, window)
    return [Check(
        name="selftest.wrong_slope",
        anchor="|G(x,y)| <= C (1 + |log|x-y||)",
        passed=abs(rep.slope - 1.0) <= 0.05,
        measured={"slope": rep.slope},
        expected={"slope": 1.0, "tol": 0.05},
        details="intentionally wrong expected value")]


PRESETS = {
    "decay3d": checks_decay3d,
    "laplace3d": checks_decay3d,
    "log2d": checks_log2d,
    "monotone": checks_monotone,
    "adjoint": checks_adjoint,
    "lorentz": checks_lorentz,
    "uniform": checks_uniform,
    "lift": checks_lift,
    "oracle": checks_oracle,
    "selftest-fail": _checks_selftest_fail,
}

EXPERIMENTS = {
    "solve": ("oracle",),
    "decay": ("decay3d", "log2d"),
    "lorentz": ("lorentz",),
    "lift": ("lift",),
    "monotone": ("monotone",),
    "adjoint": ("adjoint",),
    "uniform": ("uniform",),
}

ALL_PRESETS = ("decay3d", "log2d", "monotone", "adjoint", "lorentz",
               "uniform", "lift", "oracle")


def run_preset(name):
    """Run one preset; returns (checks, elapsed seconds)."""
    if name == "all":
        names = ALL_PRESETS
    elif name in EXPERIMENTS:
        names = EXPERIMENTS[name]
    elif name in PRESETS:
        names = (name,)
    else:
        raise ConfigError(f"unknown preset or experiment {name!r}")
    t0 = time.perf_counter()
    checks = []
    for nm in names:
        checks.extend(PRESETS[nm]())
    return checks, time.perf_counter() - t0
