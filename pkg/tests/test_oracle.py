"""Shooting integrator and mismatch-based spectra."""

import cmath
import math

import numpy as np
import pytest

from ptsat import models, oracle, rootfinder
from reference_values import REFERENCE as R


def ref_roots(key):
    return [complex(*t) for t in R[key]]


RM = models.RosenMorse(3.2, 1.0)


# ----------------------------------------------------------------------
# Half-line integration
# ----------------------------------------------------------------------

def test_halfline_flat_region_log_derivative():
    # Hermitian well, matching point still inside the exterior flat region:
    # the solution is a pure exponential there, log-derivative = K.  The
    # matcher sits a bit away from the potential edge so no integration
    # stage samples the discontinuity.
    m = models.SquareWell(1.0, 0.0, 2.0)
    cfg = oracle.ShootingConfig(L=25.0, matcher_x=-2.5)
    psi, dpsi = oracle.integrate_halfline(m, -0.5, "left", cfg)
    assert abs(dpsi / psi - math.sqrt(0.5)) < 1e-10


def test_halfline_step_model_exact():
    m = models.Step(5.0)
    E = 2.0 + 1.0j
    psi, dpsi = oracle.integrate_halfline(m, E, "left")
    k1 = cmath.sqrt(-(E + 5j))
    assert abs(dpsi / psi - k1) < 1e-12 * abs(k1)
    # for the right side keep the matcher inside the x > 0 plateau; the
    # potential's x = 0 value belongs to the left branch by convention
    psi, dpsi = oracle.integrate_halfline(m, E, "right",
                                          oracle.ShootingConfig(L=25.0, matcher_x=0.5))
    k2 = cmath.sqrt(-(E - 5j))
    assert abs(dpsi / psi + k2) < 1e-12 * abs(k2)


def test_halfline_rejects_bad_config():
    with pytest.raises(ValueError):
        oracle.ShootingConfig(L=-1.0)
    with pytest.raises(ValueError):
        oracle.ShootingConfig(L=10.0, matcher_x=11.0)
    with pytest.raises(ValueError):
        oracle.integrate_halfline(models.Step(5.0), 1.0, "up")


def test_default_config_saturation_depth():
    # |V(+/-L) -/+ i V1| < 1e-8 for the smooth saturation models
    for m in (models.ExpStep(5.0, 8.0), models.RosenMorse(3.2, 1.0)):
        cfg = oracle.default_config(m)
        v1 = 2.0 * m.c if isinstance(m, models.RosenMorse) else m.v1
        tail = abs(models.potential_value(m, cfg.L) - 1j * v1)
        assert tail < 1e-8


# ----------------------------------------------------------------------
# Mismatch function
# ----------------------------------------------------------------------

def test_mismatch_vanishes_at_closed_form_levels():
    for E in models.rosen_morse_levels(3.2, 1.0):
        assert abs(oracle.wronskian_mismatch(RM, E)) < 1e-9


def test_mismatch_large_off_levels():
    assert abs(oracle.wronskian_mismatch(RM, -8.0)) > 0.1


def test_mismatch_regression_points():
    v = oracle.wronskian_mismatch(models.ExpStep(5.0, 8.0), 3.0 + 1.0j)
    want = complex(5.94024219884636828e-04, -4.80541823922669975e-03)
    assert abs(v - want) < 1e-9 * abs(want)
    v = oracle.wronskian_mismatch(models.SquareWell(5.0, 2.0, 2.0), 10.0)
    want = complex(2.53184058769418616e-02, 0.0)
    assert abs(v - want) < 1e-9 * abs(want)


def test_mismatch_real_on_axis():
    # exact mirroring makes M(conj E) = conj M(E) bitwise; on the real
    # axis the imaginary part must vanish identically
    for m in (RM, models.ExpStep(5.0, 8.0), models.SquareWell(5.0, 2.0, 2.0)):
        for E in (-3.7, 0.9, 11.3):
            assert oracle.wronskian_mismatch(m, E).imag == 0.0


def test_mismatch_conjugation_bitwise():
    m = models.LinearStep(5.0, 2.0)
    for E in (2 + 1j, 7.5 - 0.8j):
        a = oracle.wronskian_mismatch(m, E.conjugate())
        b = oracle.wronskian_mismatch(m, E).conjugate()
        assert a == b


def test_mismatch_at_characteristic_roots():
    f5 = models.ExpStep(5.0, 8.0)
    for E in ref_roots("roots_expstep"):
        assert abs(oracle.wronskian_mismatch(f5, E)) < 1e-6
    lin = models.LinearStep(5.0, 2.0)
    for E in ref_roots("roots_linear"):
        assert abs(oracle.wronskian_mismatch(lin, E)) < 1e-6


# ----------------------------------------------------------------------
# Spectra
# ----------------------------------------------------------------------

def test_oracle_spectrum_rosen_morse(oracle_spectra):
    roots = oracle_spectra["rosen_morse"]
    want = R["rosen_morse_levels_s3p2_c1"]
    assert len(roots) == len(want)
    for r, w in zip(roots, want):
        assert r.kind == "real"
        assert abs(r.energy - w) < 1e-2


def test_oracle_spectrum_step_empty(oracle_spectra):
    assert oracle_spectra["step"] == []


def test_oracle_agreement_with_characteristic(char_spectra, oracle_spectra):
    for name, char_roots in char_spectra.items():
        oracle_roots = oracle_spectra[name]
        assert len(oracle_roots) == len(char_roots), name
        for c in char_roots:
            tol = max(1e-3, 1e-3 * abs(c.energy))
            assert min(abs(o.energy - c.energy) for o in oracle_roots) < tol, name
        for o in oracle_roots:
            tol = max(1e-3, 1e-3 * abs(o.energy))
            assert min(abs(c.energy - o.energy) for c in char_roots) < tol, name


# ----------------------------------------------------------------------
# Numerical convergence
# ----------------------------------------------------------------------

def test_step_halving_diagnostic_fourth_order():
    cfg = oracle.ShootingConfig(L=20.0, n_steps=2000)
    d = oracle.step_halving_diagnostic(RM, -8.0, cfg)
    # error contraction per halving ~ 2^4 for a smooth potential
    assert 8.0 < d["convergence_ratio"] < 40.0


def test_root_stable_under_step_halving():
    E0 = R["rosen_morse_levels_s3p2_c1"][1]
    roots = {}
    for mult in (1, 2):
        cfg = oracle.ShootingConfig(L=20.0, n_steps=20000 * mult)
        f = oracle.mismatch_fn(RM, cfg)
        root = rootfinder.refine_root(f, E0 + 1e-4, tol_f=1e-6,
                                      step_tol=oracle.ORACLE_STEP_TOL)
        assert root is not None
        roots[mult] = root.energy
    assert abs(roots[2] - roots[1]) < 1e-6 * max(1.0, abs(roots[1]))


def test_root_stable_under_longer_truncation():
    E0 = R["rosen_morse_levels_s3p2_c1"][0]
    roots = {}
    for L in (20.0, 25.0):
        cfg = oracle.ShootingConfig(L=L)
        f = oracle.mismatch_fn(RM, cfg)
        root = rootfinder.refine_root(f, E0 + 1e-4, tol_f=1e-6,
                                      step_tol=1e-9)
        assert root is not None
        roots[L] = root.energy
    assert abs(roots[25.0] - roots[20.0]) < 1e-8 * max(1.0, abs(roots[20.0]))


def test_coarse_steps_degrade_mismatch():
    # a deliberately coarse integrator visibly shifts the mismatch
    fine = oracle.wronskian_mismatch(RM, -8.0)
    coarse = oracle.wronskian_mismatch(RM, -8.0, oracle.ShootingConfig(L=20.0, n_steps=200))
    assert abs(fine - coarse) > 1e-6
