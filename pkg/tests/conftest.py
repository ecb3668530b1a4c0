"""Shared fixtures: the reference spectra are expensive, compute them once."""

from __future__ import annotations

import numpy as np
import pytest

from ptsat import models, oracle, rootfinder

# canonical demo cases; rectangles bracket every reference value with margin
CASES = {
    "expstep": (models.ExpStep(5.0, 8.0), rootfinder.SearchRect(0, 6, -6, 6)),
    "linear": (models.LinearStep(5.0, 2.0), rootfinder.SearchRect(0, 12, -4, 4)),
    "sqwell_v0_0": (models.SquareWell(0.0, 5.0, 2.0), rootfinder.SearchRect(0, 9, -3, 3)),
    "sqwell_v0_5": (models.SquareWell(5.0, 2.0, 2.0), rootfinder.SearchRect(-6, 39, -4, 4)),
    "sqwell_v0_m5": (models.SquareWell(-5.0, 2.0, 2.0), rootfinder.SearchRect(0, 45, -4, 4)),
    "step": (models.Step(5.0), rootfinder.SearchRect(-20, 20, -20, 20)),
}


@pytest.fixture(scope="session")
def char_spectra():
    """Characteristic-function spectra for the demo cases at default grids."""
    return {name: rootfinder.find_spectrum(model, rect)
            for name, (model, rect) in CASES.items()}


@pytest.fixture(scope="session")
def oracle_spectra():
    """Shooting-oracle spectra for the same rectangles (coarser scan grid)."""
    out = {}
    for name, (model, rect) in CASES.items():
        out[name] = oracle.oracle_spectrum(model, oracle.default_rect(rect))
    out["rosen_morse"] = oracle.oracle_spectrum(
        models.RosenMorse(3.2, 1.0),
        rootfinder.SearchRect(-12, 26, -2, 2, 160, 64))
    return out


def roots_point_set(roots):
    return np.array([r.energy for r in roots])


def nearest(roots, target: complex) -> float:
    """Distance from target to the nearest root (inf if none)."""
    if not roots:
        return float("inf")
    return min(abs(r.energy - target) for r in roots)
