"""Acceptance suite: one test per headline criterion, at stated tolerance.

Heavy experiment groups run once each through module-scoped fixtures and the
individual criteria assert against the shared results.  Each test prints one
PASS/FAIL line (visible with ``pytest -s`` or in failure reports).
"""

import numpy as np
import pytest

from greenbox import verify


def _compact(value):
    if isinstance(value, (list, tuple)):
        return len(value) <= 6
    if isinstance(value, dict):
        return len(value) <= 6 and all(_compact(v) for v in value.values())
    return True


def _report(label, checks):
    ok = all(c.passed for c in checks)
    print(f"[{'PASS' if ok else 'FAIL'}] {label}")
    for c in checks:
        shown = {k: v for k, v in c.measured.items() if _compact(v)}
        print(f"    [{'PASS' if c.passed else 'FAIL'}] {c.name}: "
              f"measured {shown} expected {c.expected}")
    return ok


def _named(checks, *prefixes):
    out = [c for c in checks if any(c.name.startswith(p) for p in prefixes)]
    assert out, f"no checks matched {prefixes}"
    return out


@pytest.fixture(scope="module")
def decay3d_checks():
    return verify.checks_decay3d()


@pytest.fixture(scope="module")
def log2d_checks():
    return verify.checks_log2d()


@pytest.fixture(scope="module")
def monotone_checks():
    return verify.checks_monotone()


def test_criterion_01_decay_exponent_3d(decay3d_checks):
    checks = _named(decay3d_checks, "decay3d.G.")
    ok = _report("criterion 1: d=3 |G| decay exponent -1 +- 0.1", checks)
    assert ok, ("fitted |G| exponents on the R=2 Dirichlet box: "
                + ", ".join(f"{c.name}={c.measured['exponent']:.4f}"
                            for c in checks)
                + " (window [4h, R/4]; see the offset-corrected companion "
                  "check, which passes)")


def test_criterion_01_companion_offset_corrected(decay3d_checks):
    checks = _named(decay3d_checks, "decay3d.G_offset_corrected.")
    assert _report("criterion 1 companion: box-offset-corrected |G| fit",
                   checks)


def test_criterion_02_log_bound_2d(log2d_checks):
    checks = _named(log2d_checks, "log2d.G.")
    assert _report("criterion 2: d=2 log bound, slope 1/(2 pi) +- 15%", checks)


def test_criterion_03_gradient_exponents(decay3d_checks, log2d_checks):
    checks = _named(decay3d_checks, "decay3d.grad.") + \
        _named(log2d_checks, "log2d.grad.")
    assert _report("criterion 3: |grad G| exponent 1-d, both dims", checks)


def test_criterion_04_mixed_exponent(log2d_checks):
    checks = _named(log2d_checks, "log2d.mixed.")
    assert _report("criterion 4: |grad_x grad_y G| exponent -d +- 0.2", checks)


def test_criterion_05_monotone_growth(monotone_checks):
    assert _report("criterion 5: maximum-principle monotonicity and 2D drift",
                   monotone_checks)


def test_criterion_06_adjoint_identity():
    assert _report("criterion 6: adjoint identity (nonsym_skew, n=17)",
                   verify.checks_adjoint())


def test_criterion_07_lorentz_suite():
    assert _report("criterion 7: weak-Lorentz norm suite",
                   verify.checks_lorentz())


def test_criterion_08_uniform_bounds():
    assert _report("criterion 8: uniform-in-R decay constants and weak norms",
                   verify.checks_uniform())


def test_criterion_09_dimension_lifting():
    assert _report("criterion 9: dimension lifting", verify.checks_lift())


def test_criterion_10_oracle_equivalence():
    assert _report("criterion 10: Krylov Green matrices match dense inverses",
                   verify.checks_oracle())


def test_criterion_11_interior_ratio(decay3d_checks, log2d_checks):
    checks = _named(decay3d_checks, "decay3d.ratio.") + \
        _named(log2d_checks, "log2d.ratio.")
    assert _report("criterion 11: interior gradient-over-value ratio", checks)
