"""Spectra and eigenfunctions of PT-symmetric potentials with imaginary
asymptotic saturation: closed-form characteristic equations solved in the
complex energy plane, independently verified by a shooting oracle."""

__version__ = "0.1.0"

from .models import (  # noqa: F401
    Step,
    ExpStep,
    LinearStep,
    SquareWell,
    RosenMorse,
    ModelSpec,
    kinematics,
    potential_value,
    hermitian_sqwell_levels,
    rosen_morse_levels,
)
from .rootfinder import SearchRect, Root, ContourSet, find_spectrum, contour_polylines  # noqa: F401
from .oracle import ShootingConfig, oracle_spectrum, wronskian_mismatch  # noqa: F401
from .eigenfunctions import assemble, current_density, reflection_property  # noqa: F401
