"""Manifest-driven reproduce-all entry point.

Renders every figure listed in the manifest from previously generated
solver outputs; with --generate it first produces those inputs by invoking
the ptsat command line (the only coupling to the solver).  Rendering never
recomputes physics.
"""

from __future__ import annotations

import argparse
import json
import subprocess
import sys
from importlib import resources
from pathlib import Path

from . import panels, schema

__all__ = ["main", "reproduce"]


def _load_manifest(path: Path | None) -> dict:
    if path is not None:
        text = Path(path).read_text(encoding="utf-8")
    else:
        text = resources.files("ptsat_figures").joinpath("manifest.json") \
            .read_text(encoding="utf-8")
    doc = json.loads(text)
    if "figures" not in doc:
        raise schema.SchemaError("manifest lacks the 'figures' key")
    return doc


def _generate_inputs(figure: dict, datadir: Path) -> None:
    for argv in figure.get("generate", []):
        argv = [a if not a.startswith("--out") else a for a in argv]
        cmd = [sys.executable, "-m", "ptsat.cli", *argv]
        # route --out targets into the data directory
        for k, a in enumerate(cmd):
            if a == "--out" and k + 1 < len(cmd):
                cmd[k + 1] = str(datadir / cmd[k + 1])
        proc = subprocess.run(cmd, capture_output=True, text=True)
        if proc.returncode != 0:
            raise RuntimeError(
                f"solver command failed ({proc.returncode}): {' '.join(argv)}\n"
                f"{proc.stderr}")


def _render_figure(figure: dict, datadir: Path, outdir: Path) -> list[panels.RenderResult]:
    results = []
    for panel in figure["panels"]:
        kind = panel.get("type")
        out = outdir / panel["output"]
        xlim = tuple(panel["xlim"]) if "xlim" in panel else None
        if kind == "contour":
            spec = panels.FigureSpec(
                output=out, title=panel.get("title", ""),
                contours=datadir / panel["contours"],
                spectrum=datadir / panel["spectrum"], xlim=xlim)
            results.append(panels.render_contour_panel(spec))
        elif kind == "wavefunction":
            spec = panels.FigureSpec(
                output=out, title=panel.get("title", ""),
                wavefunctions=[(datadir / p, label) for p, label in panel["inputs"]],
                xlim=xlim)
            results.append(panels.render_wavefunction_panel(spec))
        else:
            raise schema.SchemaError(f"unknown panel type {kind!r}")
    return results


def reproduce(manifest: Path | None = None, outdir: Path = Path("figures_out"),
              only: list[str] | None = None, generate: bool = False) -> list[panels.RenderResult]:
    doc = _load_manifest(manifest)
    outdir = Path(outdir)
    datadir = outdir / "data"
    datadir.mkdir(parents=True, exist_ok=True)
    results = []
    for figure in doc["figures"]:
        if only and figure["name"] not in only:
            continue
        if generate:
            _generate_inputs(figure, datadir)
        results.extend(_render_figure(figure, datadir, outdir))
    return results


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="ptsat-figures",
        description="Render the bundled demo figures from ptsat output files")
    parser.add_argument("--manifest", type=Path, default=None)
    parser.add_argument("--outdir", type=Path, default=Path("figures_out"))
    parser.add_argument("--only", action="append", default=None,
                        help="render only the named figure (repeatable)")
    parser.add_argument("--generate", action="store_true",
                        help="run the ptsat CLI to (re)build the input files first")
    args = parser.parse_args(argv)
    try:
        results = reproduce(args.manifest, args.outdir, args.only, args.generate)
    except (schema.SchemaError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for r in results:
        print(r.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
