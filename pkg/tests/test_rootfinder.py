"""Grid scan, Newton/Muller refinement, classification, contours."""

import numpy as np
import pytest

from ptsat import models, rootfinder
from reference_values import REFERENCE as R


def ref_roots(key):
    return [complex(*t) for t in R[key]]


def by_kind(roots, kind):
    return [r for r in roots if r.kind == kind]


# ----------------------------------------------------------------------
# SearchRect
# ----------------------------------------------------------------------

def test_search_rect_validation():
    with pytest.raises(ValueError):
        rootfinder.SearchRect(1, 0, -1, 1)
    with pytest.raises(ValueError):
        rootfinder.SearchRect(0, 1, -1, 1, nx=4)
    r = rootfinder.SearchRect(0, 1, -1, 1, 10, 10)
    assert r.doubled().nx == 20


# ----------------------------------------------------------------------
# scan_candidates
# ----------------------------------------------------------------------

def test_scan_linear_function():
    # offset bounds so the root does not sit exactly on a grid node
    rect = rootfinder.SearchRect(-3.03, 2.97, -2.98, 3.02, 60, 60)
    cands = rootfinder.scan_candidates(lambda E: E - (1 + 2j), rect)
    assert len(cands) == 1
    dx, dy = rect.cell
    assert abs(cands[0] - (1 + 2j)) <= np.hypot(dx, dy)


def test_scan_factored_polynomial():
    rect = rootfinder.SearchRect(-2.01, 1.99, -1.02, 0.98, 60, 30)
    cands = rootfinder.scan_candidates(lambda E: (E - 1) * (E + 1), rect)
    assert len(cands) == 2
    cands.sort(key=lambda z: z.real)
    assert abs(cands[0] + 1) < 0.1 and abs(cands[1] - 1) < 0.1


def test_scan_step_model_is_empty():
    f = models.characteristic(models.Step(5.0))
    assert rootfinder.scan_candidates(f, rootfinder.SearchRect(-20, 20, -20, 20)) == []


# ----------------------------------------------------------------------
# refine_root
# ----------------------------------------------------------------------

def test_refine_double_root_muller_regime():
    root = rootfinder.refine_root(lambda E: E * E, 0.1 + 0.1j, tol_f=1e-12)
    assert root is not None
    assert abs(root.energy) < 1e-9


def test_refine_sqwell_first_level():
    f = models.characteristic(models.SquareWell(0.0, 5.0, 2.0))
    root = rootfinder.refine_root(f, 0.46, tol_f=1e-6)
    assert root is not None
    assert abs(root.energy - 0.4619) < 5e-3


def test_refine_linear_ccpe():
    f = models.characteristic(models.LinearStep(5.0, 2.0))
    root = rootfinder.refine_root(f, 4.3 + 1.6j, tol_f=1e-3)
    assert root is not None
    assert abs(root.energy - (4.2959 + 1.5653j)) < 5e-3


def test_refine_divergence_returns_none():
    rect = rootfinder.SearchRect(-1, 1, -1, 1, 10, 10)
    out = rootfinder.refine_root(lambda E: E * 0 + 1.0, 0.5, tol_f=1e-12, rect=rect)
    assert out is None


# ----------------------------------------------------------------------
# find_spectrum
# ----------------------------------------------------------------------

def test_find_spectrum_requires_characteristic():
    with pytest.raises(ValueError):
        rootfinder.find_spectrum(models.RosenMorse(3.2, 1.0),
                                 rootfinder.SearchRect(-12, 26, -2, 2))


def test_spectrum_expstep(char_spectra):
    roots = char_spectra["expstep"]
    assert len(roots) == 6
    assert not by_kind(roots, "real")
    plus = by_kind(roots, "ccpe_plus")
    want = ref_roots("roots_expstep")
    assert len(plus) == 3
    for w in want:
        assert min(abs(r.energy - w) for r in plus) < 1e-8


def test_spectrum_linear(char_spectra):
    roots = char_spectra["linear"]
    want = ref_roots("roots_linear")
    assert len(roots) == 4  # one conjugate pair + two real
    for w in want:
        assert min(abs(r.energy - w) for r in roots) < 1e-8
    reals = by_kind(roots, "real")
    assert [round(r.energy.real, 4) for r in reals] == [6.5952, 10.7814]


def test_spectrum_sqwell_families(char_spectra):
    for name, key in (("sqwell_v0_0", "roots_sqwell_V0_0_a2"),
                      ("sqwell_v0_5", "roots_sqwell_V0_5"),
                      ("sqwell_v0_m5", "roots_sqwell_V0_m5")):
        roots = char_spectra[name]
        want = ref_roots(key)
        assert len(roots) == len(want)
        assert all(r.kind == "real" for r in roots)
        for w, r in zip(want, roots):
            assert abs(r.energy - w) < 1e-8


def test_spectrum_step_empty(char_spectra):
    assert char_spectra["step"] == []


def test_no_branch_point_artifact(char_spectra):
    # the square well's characteristic function vanishes like sqrt(E + V0)
    # at the branch point E = -V0, which must not survive as a root
    for r in char_spectra["sqwell_v0_5"]:
        assert abs(r.energy - (-5.0)) > 1e-3


def test_roots_conjugation_closure(char_spectra):
    for roots in char_spectra.values():
        plus = by_kind(roots, "ccpe_plus")
        minus = by_kind(roots, "ccpe_minus")
        assert len(plus) == len(minus)
        for p in plus:
            partner = [m for m in minus if m.pair_id == p.pair_id]
            assert len(partner) == 1
            gap = abs(partner[0].energy - p.energy.conjugate())
            assert gap < 1e-8 * max(1.0, abs(p.energy))


def test_residuals_below_tolerance(char_spectra):
    for roots in char_spectra.values():
        for r in roots:
            assert r.residual < rootfinder.DEFAULT_TOL_F


def test_sorted_by_real_part(char_spectra):
    for roots in char_spectra.values():
        keys = [(r.energy.real, r.energy.imag) for r in roots]
        assert keys == sorted(keys)


def test_grid_doubling_stability(char_spectra):
    # doubled resolution neither moves nor adds roots
    for name in ("linear", "sqwell_v0_5"):
        model, rect = __import__("conftest").CASES[name]
        base = char_spectra[name]
        fine = rootfinder.find_spectrum(model, rect.doubled())
        assert len(fine) == len(base)
        for a, b in zip(base, fine):
            assert abs(a.energy - b.energy) < 1e-8 * max(1.0, abs(a.energy))


# ----------------------------------------------------------------------
# Contours
# ----------------------------------------------------------------------

def test_contours_identity_function():
    rect = rootfinder.SearchRect(-1, 1, -1, 1, 20, 20)
    cs = rootfinder.contour_polylines(lambda E: E, rect)
    assert len(cs.re_zero) == 1 and len(cs.im_zero) == 1
    # Re E = 0 is the vertical axis segment, Im E = 0 the horizontal one
    assert all(abs(p.real) < 1e-12 for p in cs.re_zero[0])
    assert all(abs(p.imag) < 1e-12 for p in cs.im_zero[0])
    spans = sorted(p.imag for p in cs.re_zero[0])
    assert spans[0] == -1 and spans[-1] == 1


def test_contours_quadratic_diagonals():
    rect = rootfinder.SearchRect(-1.01, 0.99, -1.02, 0.98, 40, 40)
    cs = rootfinder.contour_polylines(lambda E: E * E, rect)
    # Re E^2 = 0 on |Re| = |Im|; Im E^2 = 0 on the axes
    for line in cs.re_zero:
        for p in line:
            assert abs(abs(p.real) - abs(p.imag)) < 0.08
    for line in cs.im_zero:
        for p in line:
            assert min(abs(p.real), abs(p.imag)) < 0.08


def test_contour_vertices_inside_rect():
    rect = rootfinder.SearchRect(0, 12, -4, 4, 80, 40)
    f = models.characteristic(models.LinearStep(5.0, 2.0))
    cs = rootfinder.contour_polylines(f, rect)
    for group in (cs.re_zero, cs.im_zero):
        for line in group:
            for p in line:
                assert rect.contains(p, 1e-9)


def _segments(polylines):
    for line in polylines:
        for a, b in zip(line[:-1], line[1:]):
            yield a, b


def _seg_intersection(a1, a2, b1, b2):
    d1 = a2 - a1
    d2 = b2 - b1
    den = d1.real * d2.imag - d1.imag * d2.real
    if den == 0:
        return None
    dz = b1 - a1
    t = (dz.real * d2.imag - dz.imag * d2.real) / den
    u = (dz.real * d1.imag - dz.imag * d1.real) / den
    if -1e-9 <= t <= 1 + 1e-9 and -1e-9 <= u <= 1 + 1e-9:
        return a1 + t * d1
    return None


def test_contour_intersections_match_roots(char_spectra):
    # Re-zero and Im-zero polylines must cross within a cell of every root
    # (checked on a cut-free model)
    model, rect = __import__("conftest").CASES["linear"]
    f = models.characteristic(model)
    cs = rootfinder.contour_polylines(f, rect)
    roots = char_spectra["linear"]
    crossings = []
    for a1, a2 in _segments(cs.re_zero):
        for b1, b2 in _segments(cs.im_zero):
            p = _seg_intersection(a1, a2, b1, b2)
            if p is not None:
                crossings.append(p)
    cell = np.hypot(*rect.cell)
    for r in roots:
        assert min(abs(c - r.energy) for c in crossings) < cell
    # and conversely every crossing is near some root
    for c in crossings:
        assert min(abs(c - r.energy) for r in roots) < cell
