"""Panel renderers for the two figure families.

Contour panels: solid Re f = 0 polylines, dashed Im f = 0 polylines,
markers at the spectrum roots (the intersections).  Wavefunction panels:
solid |psi|, dashed Re psi, dotted Im psi per state.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from . import schema  # noqa: E402

__all__ = ["FigureSpec", "RenderResult", "render_contour_panel",
           "render_wavefunction_panel"]


@dataclass
class FigureSpec:
    """Inputs and layout for one rendered figure."""

    output: Path
    title: str = ""
    contours: Optional[Path] = None
    spectrum: Optional[Path] = None
    wavefunctions: list = field(default_factory=list)  # [(csv path, label)]
    xlim: Optional[tuple] = None
    ylim: Optional[tuple] = None
    dpi: int = 150


@dataclass
class RenderResult:
    """Where the image went and which marker positions were drawn."""

    output: Path
    markers: np.ndarray


def render_contour_panel(spec: FigureSpec) -> RenderResult:
    """Zero-contour panel with root markers copied from the spectrum file."""
    if spec.contours is None or spec.spectrum is None:
        raise schema.SchemaError("contour panel needs both contours and spectrum inputs")
    contours = schema.load_contours(spec.contours)
    spectrum = schema.load_spectrum(spec.spectrum)

    fig, ax = plt.subplots(figsize=(5.0, 5.0))
    for line in contours["re_zero"]:
        ax.plot(line.real, line.imag, "-", color="tab:blue", lw=1.0)
    for line in contours["im_zero"]:
        ax.plot(line.real, line.imag, "--", color="tab:orange", lw=1.0)

    energies = spectrum["energies"]
    kinds = [r["kind"] for r in spectrum["roots"]]
    for z, kind in zip(energies, kinds):
        marker = "s" if kind == "real" else "o"
        ax.plot(z.real, z.imag, marker, color="black", ms=6, mfc="none", mew=1.4)

    rect = contours["rect"]
    ax.set_xlim(spec.xlim or (rect["re_min"], rect["re_max"]))
    ax.set_ylim(spec.ylim or (rect["im_min"], rect["im_max"]))
    ax.axhline(0.0, color="0.8", lw=0.6, zorder=0)
    ax.set_xlabel("Re E")
    ax.set_ylabel("Im E")
    if spec.title:
        ax.set_title(spec.title)
    fig.tight_layout()
    spec.output.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(spec.output, dpi=spec.dpi)
    plt.close(fig)
    return RenderResult(output=spec.output, markers=energies)


def render_wavefunction_panel(spec: FigureSpec) -> RenderResult:
    """One subplot per state: solid |psi|, dashed Re psi, dotted Im psi."""
    if not spec.wavefunctions:
        raise schema.SchemaError("wavefunction panel needs at least one CSV input")
    n = len(spec.wavefunctions)
    fig, axes = plt.subplots(1, n, figsize=(4.0 * n, 3.4), squeeze=False)
    for ax, (path, label) in zip(axes[0], spec.wavefunctions):
        data = schema.load_wavefunction(path)
        ax.plot(data["x"], data["abs_psi"], "-", color="black", lw=1.4)
        ax.plot(data["x"], data["re_psi"], "--", color="tab:blue", lw=1.0)
        ax.plot(data["x"], data["im_psi"], ":", color="tab:red", lw=1.0)
        ax.set_xlabel("x")
        ax.set_title(label)
        if spec.xlim:
            ax.set_xlim(spec.xlim)
    axes[0][0].set_ylabel(r"$|\psi|$ (solid), Re $\psi$ (dashed), Im $\psi$ (dotted)")
    if spec.title:
        fig.suptitle(spec.title)
    fig.tight_layout()
    spec.output.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(spec.output, dpi=spec.dpi)
    plt.close(fig)
    return RenderResult(output=spec.output, markers=np.array([]))
