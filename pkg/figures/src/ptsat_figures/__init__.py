"""Read-only figure reproduction for ptsat solver outputs."""

__version__ = "0.1.0"

from .panels import FigureSpec, RenderResult, render_contour_panel, render_wavefunction_panel  # noqa: F401
from .schema import SchemaError, load_contours, load_spectrum, load_wavefunction  # noqa: F401
