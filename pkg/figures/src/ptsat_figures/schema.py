"""Pinned readers for the ptsat CLI file formats.

These scripts are read-only consumers: they never recompute physics, and
every numeric annotation is copied from the input files.  A missing or
renamed key aborts loading (SchemaError), which the entry points turn
into a nonzero exit.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

__all__ = ["SchemaError", "load_spectrum", "load_contours", "load_wavefunction"]

SPECTRUM_KEYS = ("tool_version", "units", "model", "params", "source", "roots")
ROOT_KEYS = ("re", "im", "kind", "pair_id", "residual")
CONTOUR_KEYS = ("tool_version", "units", "model", "params", "rect",
                "re_zero", "im_zero")
WAVEFUNCTION_COLUMNS = ("x", "re_psi", "im_psi", "abs_psi", "current")


class SchemaError(ValueError):
    """An input file does not match the pinned ptsat schema."""


def _require(doc: dict, keys, what: str, path) -> None:
    missing = [k for k in keys if k not in doc]
    if missing:
        raise SchemaError(f"{what} {path} lacks required keys: {', '.join(missing)}")


def _read_json(path) -> dict:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot parse {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError(f"{path}: expected a JSON object")
    return doc


def load_spectrum(path) -> dict:
    """Spectrum document; adds a convenience 'energies' complex array."""
    doc = _read_json(path)
    _require(doc, SPECTRUM_KEYS, "spectrum file", path)
    for root in doc["roots"]:
        _require(root, ROOT_KEYS, "spectrum root entry in", path)
    doc["energies"] = np.array([complex(r["re"], r["im"]) for r in doc["roots"]])
    return doc


def load_contours(path) -> dict:
    """Contour document; polylines become complex arrays."""
    doc = _read_json(path)
    _require(doc, CONTOUR_KEYS, "contour file", path)
    for field in ("re_zero", "im_zero"):
        lines = []
        for line in doc[field]:
            for p in line:
                _require(p, ("re", "im"), "contour vertex in", path)
            lines.append(np.array([complex(p["re"], p["im"]) for p in line]))
        doc[field] = lines
    return doc


def load_wavefunction(path) -> dict:
    """Wavefunction CSV as column arrays keyed by header name."""
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            header = tuple(next(reader))
            rows = [[float(v) for v in row] for row in reader if row]
    except (OSError, StopIteration, ValueError) as exc:
        raise SchemaError(f"cannot parse {path}: {exc}") from exc
    if header != WAVEFUNCTION_COLUMNS:
        raise SchemaError(f"wavefunction file {path} has columns {header}, "
                          f"expected {WAVEFUNCTION_COLUMNS}")
    data = np.array(rows)
    if data.ndim != 2 or data.shape[1] != len(header):
        raise SchemaError(f"wavefunction file {path} is ragged")
    return {name: data[:, k] for k, name in enumerate(header)}
