import numpy as np
import pytest

from greenbox import (ConfigError, assemble, build_grid, green_column,
                      make_field)
from greenbox.analysis import (AnnulusSpec, annulus_average,
                               embedding_constant,
                               embedding_constant_inverted_prefactor,
                               fit_log_growth, fit_power_decay, fit_window,
                               lebesgue_norm, lipschitz_ratio_check,
                               local_sup_check, lorentz_sandwich_check,
                               make_annuli, uniform_bound_check,
                               weak_lorentz_norm)


def test_annulus_average_constant():
    g = build_grid(2, 2.0, 65)
    spec = make_annuli(g, (0.0, 0.0), (0.25, 1.0), count=5)
    vals = np.full(g.n_nodes, -2.5)
    np.testing.assert_allclose(annulus_average(vals, g, spec), 2.5)


def test_annulus_average_log_profile():
    g = build_grid(2, 2.0, 129)
    r = g.distances_from(g.center_index)
    vals = np.where(r > 0, -np.log(np.maximum(r, 1e-300)) / (2 * np.pi), 0.0)
    spec = make_annuli(g, (0.0, 0.0), (0.1, 0.5), count=6)
    f = annulus_average(vals, g, spec)
    ref = np.abs(np.log(np.array(spec.radii))) / (2 * np.pi)
    assert np.abs(f / ref - 1.0).max() <= 0.03


def test_annulus_average_radial_inverse_3d():
    g = build_grid(3, 1.0, 33)
    r = g.distances_from(g.center_index)
    vals = np.where(r > 0, 1.0 / np.maximum(r, 1e-300), 0.0)
    spec = make_annuli(g, (0.0, 0.0, 0.0), (0.2, 0.8), count=5)
    f = annulus_average(vals, g, spec)
    assert np.abs(f * np.array(spec.radii) - 1.0).max() <= 0.03


def test_annulus_spec_validation():
    with pytest.raises(ConfigError):
        AnnulusSpec(center=(0.0, 0.0), rel_thickness=0.7, radii=(0.1, 0.2))
    with pytest.raises(ConfigError):
        AnnulusSpec(center=(0.0, 0.0), rel_thickness=0.1, radii=(0.2, 0.1))
    g = build_grid(2, 1.0, 9)
    with pytest.raises(ConfigError):
        # shells far thinner than the spacing cannot hold 8 nodes
        make_annuli(g, (0.0, 0.0), (0.01, 0.02), count=5, eta=0.05)


def test_weak_norm_constant_unit_measure():
    vals = np.full(50, 3.0)
    assert weak_lorentz_norm(vals, 1.0 / 50, p=2.0) == pytest.approx(3.0)


def test_weak_norm_single_entry():
    vals = np.zeros(64)
    vals[17] = -5.0
    cell = 0.125
    assert weak_lorentz_norm(vals, cell, p=3.0) == pytest.approx(
        5.0 * cell ** (1 / 3))


def test_weak_norm_matches_brute_force_sup():
    # independent oracle: scan the level parameter t on a fine grid; the
    # order-statistic formula must dominate and match at the jumps
    rng = np.random.default_rng(7)
    for _ in range(25):
        vals = rng.lognormal(sigma=1.5, size=rng.integers(5, 60))
        cell = float(rng.uniform(0.01, 2.0))
        p = float(rng.uniform(1.0, 4.0))
        norm = weak_lorentz_norm(vals, cell, p)
        ts = np.linspace(0, np.abs(vals).max(), 2000)[1:]
        counts = (np.abs(vals)[None, :] >= ts[:, None]).sum(axis=1)
        brute = (ts * (counts * cell) ** (1 / p)).max()
        assert brute <= norm * (1 + 1e-12)
        assert norm <= brute * 1.01


def test_weak_norm_disk_inverse_radius():
    g = build_grid(2, 1.0, 257)
    r = np.linalg.norm(g.node_coords, axis=1)
    mask = (r <= 1.0) & (r >= 4 * g.h)
    norm = weak_lorentz_norm(1.0 / r[mask], g.h**2, p=2.0)
    assert abs(norm / np.sqrt(np.pi) - 1.0) <= 0.02


def test_embedding_constant_derivation_brute_force():
    # layer-cake optimum: C = (beta/p)^{1/(p-beta)} mu^{-beta/(p(p-beta))};
    # check validity on random fields and that the inverted prefactor fails
    rng = np.random.default_rng(11)
    inverted_violations = 0
    for _ in range(500):
        size = 100
        kind = rng.integers(0, 3)
        if kind == 0:
            vals = rng.normal(size=size)
        elif kind == 1:
            vals = rng.lognormal(sigma=2.0, size=size)
        else:
            vals = np.zeros(size)
            vals[rng.choice(size, 10, replace=False)] = rng.normal(10) * 50
        cell = float(rng.uniform(0.001, 10.0))
        p = float(rng.uniform(1.6, 4.0))
        beta = float(rng.uniform(0.1, p - 1.0 - 0.05))
        rep = lorentz_sandwich_check(vals, cell, p, beta)
        assert rep.lower_ok and rep.upper_ok
        inverted_violations += not rep.inverted_lower_ok
    # constant fields certify the failure of the inverted prefactor
    rep = lorentz_sandwich_check(np.ones(100), 0.01, 2.0, 1.0)
    assert not rep.inverted_lower_ok
    assert rep.c_inverted == pytest.approx(2.0)
    assert rep.c_corrected == pytest.approx(0.5)
    assert inverted_violations >= 1


def test_embedding_constant_values():
    assert embedding_constant(2.0, 1.0, 1.0) == pytest.approx(0.5)
    assert embedding_constant_inverted_prefactor(2.0, 1.0, 1.0) == pytest.approx(2.0)
    # measure dependence: mu^(-beta/(p(p-beta)))
    assert embedding_constant(2.0, 0.5, 16.0) == pytest.approx(
        (0.25) ** (1 / 1.5) * 16.0 ** (-0.5 / 3.0))


def test_sandwich_parameter_validation():
    with pytest.raises(ConfigError):
        lorentz_sandwich_check(np.ones(4), 1.0, p=2.0, beta=1.5)
    with pytest.raises(ConfigError):
        weak_lorentz_norm(np.ones(4), 1.0, p=0.5)


def test_fit_power_exact_law():
    radii = np.geomspace(0.1, 1.0, 9)
    rep = fit_power_decay(radii, radii**-1.0, (0.1, 1.0))
    assert abs(rep.fitted_exponent + 1.0) <= 1e-10
    assert rep.fitted_constant == pytest.approx(1.0, abs=1e-10)
    assert rep.rms_log_residual <= 1e-12
    rep2 = fit_power_decay(radii, 3.7 * radii**-2.5, (0.1, 1.0), "mixed")
    assert abs(rep2.fitted_exponent + 2.5) <= 1e-10
    assert rep2.fitted_constant == pytest.approx(3.7, rel=1e-10)


def test_fit_power_errors():
    radii = np.geomspace(0.1, 1.0, 9)
    with pytest.raises(ConfigError):
        fit_power_decay(radii, radii**-1.0, (0.5, 0.6))  # < 5 radii inside
    vals = radii**-1.0
    vals[3] = 0.0
    with pytest.raises(ConfigError):
        fit_power_decay(radii, vals, (0.1, 1.0))


def test_fit_log_growth_synthetic():
    radii = np.geomspace(0.05, 0.9, 11)
    stats = 1.0 + np.abs(np.log(radii))
    rep = fit_log_growth(radii, stats, (0.05, 0.9))
    assert rep.slope == pytest.approx(1.0, abs=1e-12)
    assert rep.rms_residual <= 1e-12


def test_fit_window_log_cap():
    g = build_grid(2, 4.0, 129)
    assert fit_window(g) == (4 * g.h, 1.0)
    assert fit_window(g, "log") == (4 * g.h, 0.5)
    g_small = build_grid(2, 1.0, 65)
    assert fit_window(g_small, "log") == (4 * g_small.h, 0.25)


def test_ratio_scale_invariance():
    f = make_field("identity", 2)
    g = build_grid(2, 1.0, 65)
    col = green_column(f, g, g.center_index)
    xs = [g.node_at((12 * g.h, 0.0))]
    base = lipschitz_ratio_check(col, xs)
    col.values = col.values * 10.0
    scaled = lipschitz_ratio_check(col, xs)
    assert scaled.max_ratio == pytest.approx(base.max_ratio, rel=1e-12)


def test_ratio_preconditions():
    f = make_field("identity", 2)
    g = build_grid(2, 1.0, 65)
    col = green_column(f, g, g.center_index)
    near = [g.node_at((4 * g.h, 0.0))]
    with pytest.raises(ConfigError):
        lipschitz_ratio_check(col, near)  # r = (2/3) 4h < 8h
    with pytest.raises(ConfigError):
        lipschitz_ratio_check(col, [g.node_at((12 * g.h, 0.0))],
                              r_fractions=(1.5,))
    edge = [g.node_at((g.half_width - g.h, 0.0))]
    with pytest.raises(ConfigError):
        lipschitz_ratio_check(col, edge, r_fractions=(0.9,))


def test_local_sup_constant_field():
    g = build_grid(2, 2.0, 65)
    f = make_field("identity", 2)
    K = assemble(f, g)
    vals = np.full(g.n_nodes, 4.0)
    rep = local_sup_check(K, vals, g, g.center_index, radii=[0.25])
    assert rep.passed
    assert rep.sup_values[0] == pytest.approx(4.0)


def test_local_sup_green_column():
    g = build_grid(2, 2.0, 65)
    f = make_field("scalar_trig", 2)
    K = assemble(f, g)
    col = green_column(f, g, g.center_index, system=K)
    rep = local_sup_check(K, col.values, g, col.source)
    assert rep.passed
    assert len(rep.radii) >= 2


def test_local_sup_rejects_non_harmonic():
    g = build_grid(2, 2.0, 33)
    f = make_field("identity", 2)
    K = assemble(f, g)
    vals = np.random.default_rng(3).normal(size=g.n_nodes)
    with pytest.raises(ConfigError):
        local_sup_check(K, vals, g, g.center_index)


def test_uniform_bound_check_small():
    f = make_field("identity", 2)
    rep = uniform_bound_check(f, [(0.0, 0.0)], (1.0, 2.0), h=1.0 / 32.0,
                              include_mixed=False)
    assert rep.passed
    assert set(rep.records) == {"G", "grad", "weak_grad"}
    for spread in rep.spreads.values():
        assert spread < 1.25


def test_lebesgue_norm():
    vals = np.array([1.0, -2.0, 2.0])
    assert lebesgue_norm(vals, 0.5, 2.0) == pytest.approx(np.sqrt(4.5))
