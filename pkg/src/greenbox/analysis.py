"""Measurement machinery: annulus statistics, weak-Lorentz norms, the
embedding sandwich, decay and log-growth fits, and the interior bound checks.

The radial fit window is [4h, R/4] by default: inside 4h the discrete delta
pollutes the column, outside R/4 the Dirichlet boundary does.  For the 2D
log-growth fit of a normalized column the outer cut is R/8, which keeps the
window clear of the zero crossing that the zero-mean normalization over
B_1(y) places at |x - y| = exp(-1/2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import green as green_mod
from . import mesh, sparse
from .errors import ConfigError

DEFAULT_ETA = 0.1
MIN_FIT_RADII = 5
MIN_SHELL_NODES = 8


@dataclass(frozen=True)
class AnnulusSpec:
    """Shells [r(1-eta), r(1+eta)] around a center point."""

    center: tuple
    rel_thickness: float
    radii: tuple

    def __post_init__(self):
        if not 0.0 < self.rel_thickness < 0.5:
            raise ConfigError("relative shell thickness must lie in (0, 0.5)")
        r = np.asarray(self.radii)
        if r.size == 0 or np.any(np.diff(r) <= 0) or r[0] <= 0:
            raise ConfigError("radii must be positive and strictly increasing")


def fit_window(grid, kind="power"):
    """Default radial window [4h, R/4].

    For log-growth fits of a 2D-normalized column the outer cut is also
    capped at 0.5: the zero-mean normalization over B_1(y) puts the sign
    change of the column near |x - y| = exp(-1/2) ~ 0.61 regardless of R,
    and shells beyond it would corrupt the |G| regression.
    """
    outer = grid.half_width / 4.0
    if kind == "log":
        outer = min(outer, 0.5)
    return (4.0 * grid.h, outer)


def make_annuli(grid, center, window, count=9, eta=DEFAULT_ETA,
                min_nodes=MIN_SHELL_NODES):
    """Log-spaced shells inside ``window``, validated to hold enough nodes."""
    r_min, r_max = window
    if not 0 < r_min < r_max:
        raise ConfigError(f"degenerate fit window [{r_min}, {r_max}]")
    center = tuple(float(c) for c in center)
    radii = np.geomspace(r_min, r_max, count)
    spec = AnnulusSpec(center=center, rel_thickness=eta, radii=tuple(radii))
    dist = np.linalg.norm(grid.node_coords - np.asarray(center), axis=1)
    for r in radii:
        n_in = int(((dist >= r * (1 - eta)) & (dist <= r * (1 + eta))).sum())
        if n_in < min_nodes:
            raise ConfigError(
                f"shell at r = {r:g} holds only {n_in} nodes (< {min_nodes})")
    return spec


def annulus_average(values, grid, spec):
    """f(r): mean of |values| over the nodes of each shell."""
    values = np.asarray(values)
    dist = np.linalg.norm(grid.node_coords - np.asarray(spec.center), axis=1)
    eta = spec.rel_thickness
    out = np.empty(len(spec.radii))
    for k, r in enumerate(spec.radii):
        m = (dist >= r * (1 - eta)) & (dist <= r * (1 + eta))
        if not m.any():
            raise ConfigError(f"empty shell at r = {r:g}")
        out[k] = np.abs(values[m]).mean()
    return out


def weak_lorentz_norm(values, cell_volume, p):
    """||f||_{p,infty} = sup_t t mu(|f| >= t)^{1/p} with counting measure.

    The supremum is attained at the sorted distinct magnitudes, so it equals
    max_k |v|_(k) (k cell_volume)^{1/p} over the descending order statistics.
    """
    if p < 1:
        raise ConfigError("p must be >= 1")
    v = np.sort(np.abs(np.asarray(values, dtype=float).ravel()))[::-1]
    if v.size == 0 or v[0] == 0.0:
        return 0.0
    measures = np.arange(1, v.size + 1) * cell_volume
    return float((v * measures ** (1.0 / p)).max())


def lebesgue_norm(values, cell_volume, q):
    v = np.abs(np.asarray(values, dtype=float).ravel())
    return float((np.sum(v**q) * cell_volume) ** (1.0 / q))


def embedding_constant(p, beta, measure):
    """Sharp layer-cake constant C with C ||f||_{p-beta} <= ||f||_{p,infty}.

    Derived by optimizing the split of the layer-cake integral at the level
    T = N mu(Omega)^{-1/p}:  C = (beta/p)^{1/(p-beta)} mu(Omega)^{-beta/(p(p-beta))}.
    """
    return (beta / p) ** (1.0 / (p - beta)) * measure ** (-beta / (p * (p - beta)))


def embedding_constant_inverted_prefactor(p, beta, measure):
    """The frequently mis-stated variant with (p/beta) in place of (beta/p).

    Already refuted by f = 1 on a unit-measure domain (it asserts 2 <= 1 at
    p = 2, beta = 1); kept only so checks can demonstrate the failure.
    """
    return (p / beta) ** (1.0 / (p - beta)) * measure ** (-beta / (p * (p - beta)))


@dataclass
class SandwichReport:
    weak: float
    lp: float
    lp_minus_beta: float
    c_corrected: float
    c_inverted: float
    lower_ok: bool
    upper_ok: bool
    inverted_lower_ok: bool


def lorentz_sandwich_check(values, cell_volume, p, beta):
    """Evaluate C ||f||_{p-beta} <= ||f||_{p,infty} <= ||f||_{p} discretely.

    The upper inequality uses C = 1 (Chebyshev); the lower uses the corrected
    constant from ``embedding_constant``.  The report also evaluates the
    inverted-prefactor variant, which fails already for constant fields.

    beta = p - 1 (so p - beta = 1) is admitted: the layer-cake derivation of
    the constant only needs p - beta >= 1.
    """
    if not 0.0 < beta <= p - 1.0:
        raise ConfigError("need 0 < beta <= p - 1")
    values = np.asarray(values, dtype=float).ravel()
    measure = values.size * cell_volume
    weak = weak_lorentz_norm(values, cell_volume, p)
    lp = lebesgue_norm(values, cell_volume, p)
    lpb = lebesgue_norm(values, cell_volume, p - beta)
    c_good = embedding_constant(p, beta, measure)
    c_bad = embedding_constant_inverted_prefactor(p, beta, measure)
    tol = 1e-12 * max(weak, lp, 1.0)
    return SandwichReport(
        weak=weak, lp=lp, lp_minus_beta=lpb,
        c_corrected=c_good, c_inverted=c_bad,
        lower_ok=bool(c_good * lpb <= weak + tol),
        upper_ok=bool(weak <= lp + tol),
        inverted_lower_ok=bool(c_bad * lpb <= weak + tol),
    )


@dataclass
class DecayReport:
    """Least-squares power-law fit of annulus statistics."""

    quantity: str
    radii: tuple
    annulus_stats: tuple
    fitted_exponent: float
    fitted_constant: float
    fit_window: tuple
    rms_log_residual: float


def fit_power_decay(radii, stats, window, quantity="G"):
    """OLS of log f(r) on log r over the radii inside ``window``.

    fitted_constant = exp(intercept), so stats ~ constant * r^exponent.
    """
    radii = np.asarray(radii, dtype=float)
    stats = np.asarray(stats, dtype=float)
    r_min, r_max = window
    keep = (radii >= r_min * (1 - 1e-12)) & (radii <= r_max * (1 + 1e-12))
    if keep.sum() < MIN_FIT_RADII:
        raise ConfigError(
            f"need at least {MIN_FIT_RADII} radii inside the window, "
            f"got {int(keep.sum())}")
    r, f = radii[keep], stats[keep]
    if np.any(f <= 0.0):
        raise ConfigError("nonpositive annulus statistic inside the window")
    x, y = np.log(r), np.log(f)
    slope, intercept = np.polyfit(x, y, 1)
    rms = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    return DecayReport(quantity=quantity, radii=tuple(r), annulus_stats=tuple(f),
                       fitted_exponent=float(slope),
                       fitted_constant=float(np.exp(intercept)),
                       fit_window=(float(r_min), float(r_max)),
                       rms_log_residual=rms)


@dataclass
class LogGrowthReport:
    radii: tuple
    annulus_stats: tuple
    slope: float
    intercept: float
    rms_residual: float
    fit_window: tuple


def fit_log_growth(radii, stats, window):
    """OLS of f(r) on 1 + |log r|; a bounded slope certifies the 2D bound."""
    radii = np.asarray(radii, dtype=float)
    stats = np.asarray(stats, dtype=float)
    r_min, r_max = window
    keep = (radii >= r_min * (1 - 1e-12)) & (radii <= r_max * (1 + 1e-12))
    if keep.sum() < MIN_FIT_RADII:
        raise ConfigError(
            f"need at least {MIN_FIT_RADII} radii inside the window, "
            f"got {int(keep.sum())}")
    r, f = radii[keep], stats[keep]
    if np.any(f <= 0.0):
        raise ConfigError("nonpositive annulus statistic inside the window")
    x = 1.0 + np.abs(np.log(r))
    slope, intercept = np.polyfit(x, f, 1)
    rms = float(np.sqrt(np.mean((f - (slope * x + intercept)) ** 2)))
    return LogGrowthReport(radii=tuple(r), annulus_stats=tuple(f),
                           slope=float(slope), intercept=float(intercept),
                           rms_residual=rms,
                           fit_window=(float(r_min), float(r_max)))


@dataclass
class RatioReport:
    """Interior gradient-over-value ratios r sup|grad G| / sup|G|."""

    records: list  # (center, r, ratio)
    max_ratio: float
    variation: float  # max/min over the tested radii
    bounded: bool     # variation < 4


def lipschitz_ratio_check(col, x_list, r_fractions=(2.0 / 3.0,)):
    """Discrete interior estimate: ratio(x, r) = r sup_{B_{r/2}(x)} |grad G|
    over sup_{B_r(x)} |G|, with r = fraction * |x - y|.

    ``x_list`` holds node indices; each is tested at every fraction in
    ``r_fractions`` (fractions below 1 keep the source outside the ball).
    Per tested pair: r >= 8h and B_r(x) inside the box.  Ratios are
    scale-invariant in the column.  PASS when the per-radius maxima vary by
    less than a factor 4 over the distinct radii.
    """
    grid = col.grid
    coords = grid.node_coords
    y = col.source_coords
    gmag = np.linalg.norm(mesh.gradient_field(col.values, grid), axis=1)
    records = []
    per_radius = {}
    for x in x_list:
        xc = coords[x]
        rho = float(np.linalg.norm(xc - y))
        for frac in r_fractions:
            if not 0.0 < frac < 1.0:
                raise ConfigError("radius fractions must lie in (0, 1)")
            r = frac * rho
            if r < 8.0 * grid.h * (1 - 1e-12):
                raise ConfigError(f"ball radius {r:g} below 8h")
            if np.any(np.abs(xc) + r > grid.half_width * (1 + 1e-12)):
                raise ConfigError("test ball leaves the domain")
            dist = np.linalg.norm(coords - xc, axis=1)
            sup_g = float(np.abs(col.values[dist <= r * (1 + 1e-9)]).max())
            sup_dg = float(gmag[dist <= 0.5 * r * (1 + 1e-9)].max())
            ratio = r * sup_dg / sup_g
            records.append((int(x), float(r), ratio))
            per_radius.setdefault(round(r, 12), []).append(ratio)
    max_per_r = {r: max(v) for r, v in per_radius.items()}
    lo, hi = min(max_per_r.values()), max(max_per_r.values())
    return RatioReport(records=records, max_ratio=hi, variation=hi / lo,
                       bounded=hi / lo < 4.0)


@dataclass
class LocalSupReport:
    radii: tuple
    sup_values: tuple
    l2_values: tuple
    constants: tuple
    variation: float
    passed: bool


def local_sup_check(system, values, grid, y, radii=None, tol=1e-8):
    """sup over B_{2R}(y) \\ B_R(y) against (C/R) ||v||_{L2} on the annulus.

    ``values`` must be discretely harmonic there (residual of K v below
    ``tol`` relative to diag * sup|v| on rows interior to the annulus,
    source row excluded by the geometry).  Reports the empirical constant
    per dyadic R and PASS when it varies by less than a factor 4.
    """
    if radii is None:
        r0 = max(4.0 * grid.h, grid.half_width / 16.0)
        radii = []
        r = r0
        while 2.0 * r <= grid.half_width * (1 - 1e-12):
            radii.append(r)
            r *= 2.0
    if len(radii) < 1:
        raise ConfigError("no admissible annulus radii")
    interior_vals = np.asarray(values)[grid.interior_ids]
    resid = sparse.matvec(system, interior_vals)
    dist_int = grid.distances_from(y)[grid.interior_ids]
    scale = float(system.diagonal().max() * np.abs(values).max())
    sups, l2s, consts = [], [], []
    for R in radii:
        ann = (dist_int >= R) & (dist_int <= 2.0 * R)
        if not ann.any():
            raise ConfigError(f"empty annulus at R = {R:g}")
        if np.abs(resid[ann]).max() > tol * scale:
            raise ConfigError(
                f"values are not discretely harmonic on the annulus R = {R:g}")
        sup = float(np.abs(interior_vals[ann]).max())
        l2 = float(np.sqrt((interior_vals[ann] ** 2).sum() * grid.h**grid.dim))
        sups.append(sup)
        l2s.append(l2)
        consts.append(sup * R / l2)
    variation = max(consts) / min(consts)
    return LocalSupReport(radii=tuple(radii), sup_values=tuple(sups),
                          l2_values=tuple(l2s), constants=tuple(consts),
                          variation=variation, passed=variation < 4.0)


@dataclass
class UniformBoundReport:
    """Per-(R, y) fitted constants and weak norms, with spread diagnostics."""

    R_list: tuple
    y_list: tuple
    records: dict          # name -> {(R, y): value}
    spreads: dict          # name -> max/min
    passed: bool


def uniform_bound_check(field, y_list, R_list, h, *, eta=DEFAULT_ETA,
                        include_mixed=True, rel_tol=1e-10, max_spread=1.25):
    """Fitted decay/growth constants and ||grad G_R||_{d/(d-1),infty} across
    nested boxes and source positions.

    PASS when every tracked quantity varies by less than ``max_spread``
    (max/min) over all (R, y) combinations.  In 2D the G-quantity is the
    log-growth slope; in higher dimensions it is the power-fit constant.
    """
    d = field.dim
    records = {"G": {}, "grad": {}, "weak_grad": {}}
    if include_mixed:
        records["mixed"] = {}
    for R in R_list:
        steps = 2.0 * R / h
        if abs(steps - round(steps)) > 1e-9 or round(steps) % 2 != 0:
            raise ConfigError(f"h = {h} does not give an odd nested grid at R = {R}")
        grid = mesh.build_grid(d, R, int(round(steps)) + 1)
        system = mesh.assemble(field, grid)
        for y_phys in y_list:
            y = grid.node_at(y_phys)
            col = green_mod.green_column(field, grid, y, system=system,
                                         rel_tol=rel_tol)
            key = (float(R), tuple(float(c) for c in y_phys))
            win_pow = fit_window(grid, "power")
            spec = make_annuli(grid, col.source_coords, win_pow, eta=eta)
            if d == 2:
                # the log slope is normalization-independent while the
                # column is one-signed, so fit the raw positive column on
                # the full window
                stats = annulus_average(col.values, grid, spec)
                records["G"][key] = fit_log_growth(
                    spec.radii, stats, win_pow).slope
            else:
                stats = annulus_average(col.values, grid, spec)
                records["G"][key] = fit_power_decay(
                    spec.radii, stats, win_pow, "G").fitted_constant
            gmag = np.linalg.norm(mesh.gradient_field(col.values, grid), axis=1)
            gstats = annulus_average(gmag, grid, spec)
            records["grad"][key] = fit_power_decay(
                spec.radii, gstats, win_pow, "grad_x").fitted_constant
            records["weak_grad"][key] = weak_lorentz_norm(
                gmag, grid.h**d, d / (d - 1.0))
            if include_mixed:
                tensor = green_mod.mixed_derivative(field, grid, y,
                                                    system=system,
                                                    rel_tol=rel_tol)
                tmag = np.sqrt((tensor**2).sum(axis=(1, 2)))
                tstats = annulus_average(tmag, grid, spec)
                records["mixed"][key] = fit_power_decay(
                    spec.radii, tstats, win_pow, "mixed").fitted_constant
    spreads = {name: max(vals.values()) / min(vals.values())
               for name, vals in records.items()}
    passed = all(s < max_spread for s in spreads.values())
    return UniformBoundReport(R_list=tuple(R_list),
                              y_list=tuple(tuple(y) for y in y_list),
                              records=records, spreads=spreads, passed=passed)
